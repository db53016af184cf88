#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qir/analytic.hpp"
#include "qir/channel.hpp"
#include "qir/correlator.hpp"
#include "qir/grid.hpp"
#include "qir/homodyne.hpp"
#include "qir/source.hpp"

namespace qir {

enum class SourceKind { Tmsv, Classical };

enum class DetectionPolicy {
    EmpiricalNull, // threshold = quantile of target-absent peak statistics
    YBaseline,     // fixed threshold = Y-quadrature correlation strength of the source
};

struct TrialConfig {
    SimGrid grid{1.0, 100000};
    SourceKind source_kind = SourceKind::Tmsv;
    SqueezedSourceParams tmsv{};
    ClassicalSourceParams classical{};
    ChannelParams channel{};
    HomodyneConfig homodyne{};
    CorrelatorOptions correlator{};
    DetectionPolicy policy = DetectionPolicy::EmpiricalNull;
    double false_alarm_rate = 0.05;
    std::size_t n_trials = 100;
    std::size_t n_null_trials = 200;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct TrialResult {
    std::size_t trial_index = 0;
    bool detected = false;
    double threshold = 0.0;
    RangeEstimate range{};
    double peak_density = 0.0;      // range.peak * dt^2
    double peak_bias_density = 0.0; // (se1^2 + se2^2) at lag_hat, * dt^2
    double runtime_s = 0.0;
};

/// Detection inputs shared by the trials of one batch.
struct DetectionContext {
    DetectionPolicy policy = DetectionPolicy::EmpiricalNull;
    const NullCalibration* null_cal = nullptr; // EmpiricalNull
    double y_baseline = 0.0;                   // YBaseline, density units
    double false_alarm_rate = 0.05;
};

/// One full pipeline pass: source -> channel -> homodyne -> correlator.
/// Deterministic for fixed (config, trial_index). When ctx is null the
/// detection decision is skipped (detected = false, threshold = 0).
TrialResult run_trial(const TrialConfig& config, std::size_t trial_index,
                      const DetectionContext* ctx = nullptr,
                      CorrelationSeries* out_series = nullptr);

/// Peak-statistic distribution over target-absent trials run at otherwise
/// identical settings, on a salted seed space independent of measurement
/// trials. Requires n_null_trials >= 100.
NullCalibration calibrate_null(const TrialConfig& config, std::size_t n_null_trials);

/// Builds the detection context for a config (calibrating a null when the
/// policy needs one and none is supplied).
DetectionContext make_detection_context(const TrialConfig& config,
                                        const NullCalibration* null_cal);

/// Runs trials 0..n-1. Trials are parallelized when records are small and
/// run sequentially (with parallel inner kernels) when records are large;
/// results are identical either way.
std::vector<TrialResult> run_trials(const TrialConfig& config, std::size_t n_trials,
                                    const DetectionContext* ctx = nullptr);

struct DetectionEstimate {
    double p = 0.0;
    double ci_low = 0.0;  // 95% Wilson interval
    double ci_high = 0.0;
    std::size_t n_detected = 0;
    std::size_t n_trials = 0;
};

DetectionEstimate estimate_detection_probability(const TrialConfig& config,
                                                 const NullCalibration& null_cal,
                                                 double false_alarm_rate);

struct SweepCell {
    double eta = 0.0;
    double lo_intensity = 0.0;
    DetectionEstimate det{};
    bool crossing_flag = false; // first cell at/above the p = 0.5 crossing
};

struct SweepColumnCrossing {
    double lo_intensity = 0.0;
    double eta_cross = 0.0; // log-interpolated eta where p crosses 0.5
    bool found = false;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<SweepColumnCrossing> crossings;
};

/// Calibrated detection probability over an (eta, lo_intensity) grid,
/// with the p = 0.5 crossing per intensity column.
SweepResult sweep_eta_intensity(const TrialConfig& config, const std::vector<double>& eta_grid,
                                const std::vector<double>& lo_intensity_grid,
                                double false_alarm_rate);

struct PipelineSummary {
    std::string name;
    double peak_density_mc = 0.0; // bias-subtracted mean over trials
    double peak_density_se = 0.0;
    double peak_density_pred = 0.0;
    double mean_snr = 0.0;
    DetectionEstimate det{};
};

struct ComparisonReport {
    PipelineSummary quantum;
    PipelineSummary classical;
    double ratio_mc = 0.0;
    double ratio_pred = 0.0;
};

/// Quantum vs classical pipelines at matched settings. Predictions use the
/// sampler-consistent quantum convention and the classical peak formula.
ComparisonReport compare_quantum_classical(const TrialConfig& config_q,
                                           const TrialConfig& config_c,
                                           double false_alarm_rate);

/// Mean of the bias-subtracted peak density and its standard error.
std::pair<double, double> mean_debiased_peak_density(const std::vector<TrialResult>& results);

/// 95% Wilson score interval for k successes out of n.
DetectionEstimate wilson_interval(std::size_t k, std::size_t n);

} // namespace qir
