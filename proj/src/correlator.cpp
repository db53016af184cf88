#include "qir/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace qir {

namespace {

std::vector<std::int64_t> make_lag_grid(std::size_t n_bins, std::size_t max_lag,
                                        bool negative_lags) {
    if (max_lag > n_bins / 10) {
        throw std::invalid_argument("cross_correlate: max_lag must be <= n_bins/10");
    }
    std::vector<std::int64_t> lags;
    const auto m = static_cast<std::int64_t>(max_lag);
    lags.reserve(static_cast<std::size_t>(negative_lags ? 2 * m + 1 : m + 1));
    for (std::int64_t l = negative_lags ? -m : 0; l <= m; ++l) lags.push_back(l);
    return lags;
}

// Mean and standard error of the product sequence a[t] * b[t+lag] over the
// overlapping range, accumulated in a fixed serial order.
void lag_moments(std::span<const double> a, std::span<const double> b, std::int64_t lag,
                 double& value, double& se, std::size_t& overlap) {
    const auto n = static_cast<std::int64_t>(a.size());
    const std::int64_t t0 = std::max<std::int64_t>(0, -lag);
    const std::int64_t t1 = std::min<std::int64_t>(n, n - lag);
    const std::int64_t m = t1 - t0;
    overlap = static_cast<std::size_t>(m);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t t = t0; t < t1; ++t) {
        const double p = a[static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(t + lag)];
        sum += p;
        sum_sq += p * p;
    }
    value = sum / static_cast<double>(m);
    const double var = (sum_sq - static_cast<double>(m) * value * value) /
                       static_cast<double>(m - 1);
    se = std::sqrt(std::max(var, 0.0) / static_cast<double>(m));
}

template <bool Parallel>
LagCorrelation cross_correlate_impl(const FluctuationRecord& a, const FluctuationRecord& b,
                                    std::size_t max_lag, bool negative_lags) {
    require_same_grid(a.grid, b.grid, "cross_correlate");
    LagCorrelation out;
    out.lags = make_lag_grid(a.grid.n_bins, max_lag, negative_lags);
    const auto k = out.lags.size();
    out.value.resize(k);
    out.se.resize(k);
    out.n_overlap.resize(k);

    const auto kk = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < kk; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        lag_moments(a.theta, b.theta, out.lags[idx], out.value[idx], out.se[idx],
                    out.n_overlap[idx]);
    }
    return out;
}

template <bool Parallel>
CorrelationSeries correlate_records_impl(const FluctuationRecord& theta_d,
                                         const FluctuationRecord& theta_b1,
                                         const FluctuationRecord& theta_b2,
                                         const CorrelatorOptions& options) {
    require_same_grid(theta_d.grid, theta_b1.grid, "correlate_records");
    require_same_grid(theta_d.grid, theta_b2.grid, "correlate_records");

    CorrelationSeries out;
    out.lags = make_lag_grid(theta_d.grid.n_bins, options.max_lag, options.negative_lags);
    const auto k = out.lags.size();
    out.c1.resize(k);
    out.c2.resize(k);
    out.se1.resize(k);
    out.se2.resize(k);
    out.n_overlap.resize(k);

    const auto kk = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < kk; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        std::size_t ov1 = 0, ov2 = 0;
        lag_moments(theta_d.theta, theta_b1.theta, out.lags[idx], out.c1[idx], out.se1[idx], ov1);
        lag_moments(theta_d.theta, theta_b2.theta, out.lags[idx], out.c2[idx], out.se2[idx], ov2);
        out.n_overlap[idx] = ov1;
    }
    out.s = detection_statistic(out.c1, out.c2);
    return out;
}

} // namespace

LagCorrelation cross_correlate(const FluctuationRecord& a, const FluctuationRecord& b,
                               std::size_t max_lag, bool negative_lags) {
    return cross_correlate_impl<true>(a, b, max_lag, negative_lags);
}

LagCorrelation cross_correlate_serial(const FluctuationRecord& a, const FluctuationRecord& b,
                                      std::size_t max_lag, bool negative_lags) {
    return cross_correlate_impl<false>(a, b, max_lag, negative_lags);
}

std::vector<double> detection_statistic(std::span<const double> c1, std::span<const double> c2) {
    if (c1.size() != c2.size()) {
        throw std::invalid_argument("detection_statistic: length mismatch");
    }
    std::vector<double> s(c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i) s[i] = c1[i] * c1[i] + c2[i] * c2[i];
    return s;
}

CorrelationSeries correlate_records(const FluctuationRecord& theta_d,
                                    const FluctuationRecord& theta_b1,
                                    const FluctuationRecord& theta_b2,
                                    const CorrelatorOptions& options) {
    return correlate_records_impl<true>(theta_d, theta_b1, theta_b2, options);
}

CorrelationSeries correlate_records_serial(const FluctuationRecord& theta_d,
                                           const FluctuationRecord& theta_b1,
                                           const FluctuationRecord& theta_b2,
                                           const CorrelatorOptions& options) {
    return correlate_records_impl<false>(theta_d, theta_b1, theta_b2, options);
}

RangeEstimate estimate_range(const CorrelationSeries& series, const SimGrid& grid) {
    if (series.size() == 0) {
        throw std::invalid_argument("estimate_range: empty series");
    }
    grid.validate();

    RangeEstimate est;
    std::size_t best = 0;
    bool all_equal = true;
    for (std::size_t i = 1; i < series.s.size(); ++i) {
        if (series.s[i] != series.s[0]) all_equal = false;
        if (series.s[i] > series.s[best]) best = i;
    }
    if (all_equal && series.s.size() > 1) {
        // Degenerate flat statistic: report the smallest lag, flagged.
        best = static_cast<std::size_t>(
            std::min_element(series.lags.begin(), series.lags.end()) - series.lags.begin());
        est.no_peak = true;
    }

    est.lag_hat = series.lags[best];
    est.peak = series.s[best];
    est.distance_m = static_cast<double>(est.lag_hat) * grid.dt * k_speed_of_light / 2.0;

    double mean = 0.0, sd = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < series.s.size(); ++i) {
        if (std::llabs(series.lags[i] - est.lag_hat) <= 2) continue;
        mean += series.s[i];
        ++m;
    }
    if (m > 0) {
        mean /= static_cast<double>(m);
        double acc = 0.0;
        for (std::size_t i = 0; i < series.s.size(); ++i) {
            if (std::llabs(series.lags[i] - est.lag_hat) <= 2) continue;
            const double d = series.s[i] - mean;
            acc += d * d;
        }
        sd = m > 1 ? std::sqrt(acc / static_cast<double>(m - 1)) : 0.0;
    }
    est.floor_mean = mean;
    est.floor_sd = sd;
    est.snr = sd > 0.0 ? (est.peak - mean) / sd : 0.0;
    return est;
}

std::pair<double, double> noise_floor(const CorrelationSeries& series) {
    if (series.size() == 0) {
        throw std::invalid_argument("noise_floor: empty series");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < series.s.size(); ++i) {
        if (series.s[i] > series.s[best]) best = i;
    }
    const std::int64_t peak_lag = series.lags[best];

    std::vector<double> off;
    off.reserve(series.s.size());
    for (std::size_t i = 0; i < series.s.size(); ++i) {
        if (std::llabs(series.lags[i] - peak_lag) <= 2) continue;
        off.push_back(series.s[i]);
    }
    if (off.size() < 10) {
        throw std::invalid_argument("noise_floor: fewer than 10 off-peak lags");
    }
    double mean = 0.0;
    for (double v : off) mean += v;
    mean /= static_cast<double>(off.size());
    double acc = 0.0;
    for (double v : off) acc += (v - mean) * (v - mean);
    const double sd = std::sqrt(acc / static_cast<double>(off.size() - 1));
    return {mean, sd};
}

double NullCalibration::quantile(double p) const {
    if (peaks.empty()) {
        throw std::invalid_argument("NullCalibration: empty");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("NullCalibration: quantile level must be in [0, 1]");
    }
    std::vector<double> sorted = peaks;
    std::sort(sorted.begin(), sorted.end());
    const auto m = sorted.size();
    auto idx = static_cast<std::size_t>(p * static_cast<double>(m));
    if (idx >= m) idx = m - 1;
    return sorted[idx];
}

DetectionOutcome decide_detection(const CorrelationSeries& series, const NullCalibration& null_cal,
                                  double false_alarm_rate) {
    if (null_cal.peaks.size() < 100) {
        throw std::invalid_argument("decide_detection: need >= 100 null calibration trials");
    }
    if (!(false_alarm_rate > 0.0 && false_alarm_rate < 1.0)) {
        throw std::invalid_argument("decide_detection: false_alarm_rate must be in (0, 1)");
    }
    const double threshold = null_cal.quantile(1.0 - false_alarm_rate);
    const double peak = *std::max_element(series.s.begin(), series.s.end());
    return {peak > threshold, threshold};
}

DetectionOutcome decide_detection_y_baseline(const CorrelationSeries& series, const SimGrid& grid,
                                             double y_baseline_density) {
    if (!(y_baseline_density >= 0.0)) {
        throw std::invalid_argument("decide_detection_y_baseline: baseline must be >= 0");
    }
    grid.validate();
    const double dt2 = grid.dt * grid.dt;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double debiased =
            series.s[i] - series.se1[i] * series.se1[i] - series.se2[i] * series.se2[i];
        best = std::max(best, debiased * dt2);
    }
    return {best >= y_baseline_density, y_baseline_density};
}

} // namespace qir
