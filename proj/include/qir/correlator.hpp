#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qir/grid.hpp"

namespace qir {

/// Lag-resolved cross-correlation estimates for one record pair.
struct LagCorrelation {
    std::vector<std::int64_t> lags;
    std::vector<double> value;       // (1/(n-|lag|)) sum_t a[t] b[t+lag]
    std::vector<double> se;          // sample SD of products / sqrt(n-|lag|)
    std::vector<std::size_t> n_overlap;
};

/// Joint series for the detection statistic s = c1^2 + c2^2.
struct CorrelationSeries {
    std::vector<std::int64_t> lags;
    std::vector<double> c1; // <theta_D(t) theta_B1(t+lag)>
    std::vector<double> c2; // <theta_D(t) theta_B2(t+lag)>
    std::vector<double> s;
    std::vector<double> se1;
    std::vector<double> se2;
    std::vector<std::size_t> n_overlap;

    std::size_t size() const { return lags.size(); }
};

struct CorrelatorOptions {
    std::size_t max_lag = 200;
    bool negative_lags = false; // scan [-max_lag, max_lag] instead of [0, max_lag]
};

/// OpenMP lag scan. Per-lag sums run in a fixed serial order, so results are
/// bit-identical for any thread count and equal to the serial reference.
LagCorrelation cross_correlate(const FluctuationRecord& a, const FluctuationRecord& b,
                               std::size_t max_lag, bool negative_lags = false);

/// Serial reference implementation, kept for testing and benchmarking.
LagCorrelation cross_correlate_serial(const FluctuationRecord& a, const FluctuationRecord& b,
                                      std::size_t max_lag, bool negative_lags = false);

/// s[k] = c1[k]^2 + c2[k]^2.
std::vector<double> detection_statistic(std::span<const double> c1, std::span<const double> c2);

/// Correlates the idler record against both probe records over one lag grid.
CorrelationSeries correlate_records(const FluctuationRecord& theta_d,
                                    const FluctuationRecord& theta_b1,
                                    const FluctuationRecord& theta_b2,
                                    const CorrelatorOptions& options);

/// Serial counterpart of correlate_records (same contract).
CorrelationSeries correlate_records_serial(const FluctuationRecord& theta_d,
                                           const FluctuationRecord& theta_b1,
                                           const FluctuationRecord& theta_b2,
                                           const CorrelatorOptions& options);

struct RangeEstimate {
    std::int64_t lag_hat = 0;
    double distance_m = 0.0;   // lag_hat * dt * c / 2
    double peak = 0.0;         // s at lag_hat
    double floor_mean = 0.0;   // off-peak mean of s (lag_hat +/- 2 excluded)
    double floor_sd = 0.0;
    double snr = 0.0;          // (peak - floor_mean) / floor_sd, 0 if floor_sd == 0
    bool no_peak = false;      // set when s is flat (degenerate argmax)
};

RangeEstimate estimate_range(const CorrelationSeries& series, const SimGrid& grid);

/// Mean and SD of s over off-peak lags (argmax +/- 2 excluded).
/// Requires at least 10 off-peak lags.
std::pair<double, double> noise_floor(const CorrelationSeries& series);

/// Empirical distribution of the peak statistic under target-absent trials.
struct NullCalibration {
    std::vector<double> peaks;

    /// Order-statistic quantile; threshold for a false-alarm rate alpha is
    /// quantile(1 - alpha).
    double quantile(double p) const;
};

struct DetectionOutcome {
    bool detected = false;
    double threshold = 0.0;
};

/// Null-calibrated test: detect iff max(s) exceeds the (1 - false_alarm_rate)
/// quantile of the null peak distribution. Requires >= 100 calibration trials.
DetectionOutcome decide_detection(const CorrelationSeries& series, const NullCalibration& null_cal,
                                  double false_alarm_rate);

/// Alternative policy: compare the bias-subtracted peak statistic, converted
/// to density units, against a fixed baseline (the Y-quadrature correlation
/// strength of the source). Detect iff any lag reaches the baseline.
DetectionOutcome decide_detection_y_baseline(const CorrelationSeries& series, const SimGrid& grid,
                                             double y_baseline_density);

} // namespace qir
