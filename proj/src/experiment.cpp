#include "qir/experiment.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "qir/rng.hpp"

namespace qir {

namespace {

// Above this record length trials run sequentially and the per-bin/per-lag
// kernels take the parallelism instead, keeping peak memory to one trial.
constexpr std::size_t k_parallel_trial_bin_limit = 1u << 20;

CorrelationSeries run_pipeline(const TrialConfig& config, std::size_t trial_index) {
    const SimGrid& grid = config.grid;
    const std::uint64_t seed_src = derive_stream(config.master_seed, trial_index, Stream::Source);
    const ChannelSeeds ch_seeds{derive_stream(config.master_seed, trial_index, Stream::Env),
                                derive_stream(config.master_seed, trial_index, Stream::Vac)};
    const std::uint64_t seed_lo1 = derive_stream(config.master_seed, trial_index, Stream::Lo1);
    const std::uint64_t seed_lo2 = derive_stream(config.master_seed, trial_index, Stream::Lo2);
    const std::uint64_t seed_lo3 = derive_stream(config.master_seed, trial_index, Stream::Lo3);

    const double phi = config.channel.phi_b - config.homodyne.phi2;
    const double lo_i = config.homodyne.lo_intensity;

    FluctuationRecord theta_d{};
    FluctuationRecord theta_b1{};
    FluctuationRecord theta_b2{};

    if (config.source_kind == SourceKind::Tmsv) {
        const SourceCovariance cov = tmsv_covariance(config.tmsv);
        auto [probe, idler] = sample_entangled_records(cov, grid, seed_src);
        {
            const QuadratureRecord lo3 = sample_vacuum_record(grid, seed_lo3);
            theta_d = idler_homodyne(idler, lo3, lo_i, config.tmsv.flux_d, config.homodyne.phi1);
        }
        idler = QuadratureRecord{};
        const ReceivedComponents rc =
            prepare_received_components(std::move(probe), config.channel, grid, ch_seeds);
        const QuadratureRecord lo1 = sample_vacuum_record(grid, seed_lo1);
        const QuadratureRecord lo2 = sample_vacuum_record(grid, seed_lo2);
        std::tie(theta_b1, theta_b2) =
            probe_homodyne_pair(rc, lo1, lo2, lo_i, config.tmsv.flux_b, phi, config.homodyne.phi2);
    } else {
        std::vector<double> delta = sample_phase_noise_record(config.classical, grid, seed_src);
        theta_d = classical_idler_homodyne(delta, config.classical, lo_i, grid);
        if (config.channel.delay_bins >= grid.n_bins) {
            throw std::invalid_argument("run_trial: delay_bins must be < n_bins");
        }
        const std::vector<double> delta_delayed =
            delay_samples(std::move(delta), config.channel.delay_bins);
        const QuadratureRecord env =
            sample_thermal_record(config.channel.env_occupancy, grid, ch_seeds.env);
        const QuadratureRecord vac = sample_vacuum_record(grid, ch_seeds.vac);
        const double eta_eff = config.channel.target_present ? config.channel.eta : 0.0;
        std::tie(theta_b1, theta_b2) = classical_probe_homodyne_pair(
            delta_delayed, env, vac, config.classical, lo_i, eta_eff, phi, config.homodyne.phi2);
    }

    return correlate_records(theta_d, theta_b1, theta_b2, config.correlator);
}

std::size_t series_index_of_lag(const CorrelationSeries& series, std::int64_t lag) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.lags[i] == lag) return i;
    }
    throw std::logic_error("series_index_of_lag: lag not on grid");
}

TrialConfig null_variant(const TrialConfig& config) {
    TrialConfig null_cfg = config;
    null_cfg.channel.target_present = false;
    null_cfg.master_seed = null_calibration_seed(config.master_seed);
    return null_cfg;
}

} // namespace

void TrialConfig::validate() const {
    grid.validate();
    tmsv.validate();
    classical.validate();
    channel.validate();
    homodyne.validate();
    if (channel.delay_bins >= grid.n_bins) {
        throw std::invalid_argument("TrialConfig: delay_bins must be < n_bins");
    }
    if (correlator.max_lag < channel.delay_bins) {
        throw std::invalid_argument("TrialConfig: max_lag must be >= delay_bins");
    }
    if (correlator.max_lag > grid.n_bins / 10) {
        throw std::invalid_argument("TrialConfig: max_lag must be <= n_bins/10");
    }
    if (n_trials < 1) {
        throw std::invalid_argument("TrialConfig: n_trials must be >= 1");
    }
    if (!(false_alarm_rate > 0.0 && false_alarm_rate < 1.0)) {
        throw std::invalid_argument("TrialConfig: false_alarm_rate must be in (0, 1)");
    }
    if (source_kind == SourceKind::Classical && policy == DetectionPolicy::YBaseline) {
        throw std::invalid_argument("TrialConfig: y_baseline policy requires a tmsv source");
    }
}

TrialResult run_trial(const TrialConfig& config, std::size_t trial_index,
                      const DetectionContext* ctx, CorrelationSeries* out_series) {
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    const CorrelationSeries series = run_pipeline(config, trial_index);

    TrialResult result;
    result.trial_index = trial_index;
    result.range = estimate_range(series, config.grid);

    const double dt2 = config.grid.dt * config.grid.dt;
    const std::size_t peak_idx = series_index_of_lag(series, result.range.lag_hat);
    result.peak_density = result.range.peak * dt2;
    result.peak_bias_density =
        (series.se1[peak_idx] * series.se1[peak_idx] + series.se2[peak_idx] * series.se2[peak_idx]) *
        dt2;

    if (ctx != nullptr) {
        DetectionOutcome outcome{};
        if (ctx->policy == DetectionPolicy::EmpiricalNull) {
            if (ctx->null_cal == nullptr) {
                throw std::invalid_argument("run_trial: empirical-null policy needs a calibration");
            }
            outcome = decide_detection(series, *ctx->null_cal, ctx->false_alarm_rate);
        } else {
            outcome = decide_detection_y_baseline(series, config.grid, ctx->y_baseline);
        }
        result.detected = outcome.detected;
        result.threshold = outcome.threshold;
    }

    if (out_series != nullptr) *out_series = series;

    result.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

std::vector<TrialResult> run_trials(const TrialConfig& config, std::size_t n_trials,
                                    const DetectionContext* ctx) {
    config.validate();
    if (ctx != nullptr && ctx->policy == DetectionPolicy::EmpiricalNull) {
        if (ctx->null_cal == nullptr) {
            throw std::invalid_argument("run_trials: empirical-null policy needs a calibration");
        }
        if (ctx->null_cal->peaks.size() < 100) {
            throw std::invalid_argument("run_trials: need >= 100 null calibration trials");
        }
    }
    std::vector<TrialResult> results(n_trials);
    const auto n = static_cast<std::int64_t>(n_trials);
    const bool parallel_trials = config.grid.n_bins <= k_parallel_trial_bin_limit;
#pragma omp parallel for schedule(dynamic) if (parallel_trials)
    for (std::int64_t i = 0; i < n; ++i) {
        results[static_cast<std::size_t>(i)] =
            run_trial(config, static_cast<std::size_t>(i), ctx);
    }
    return results;
}

NullCalibration calibrate_null(const TrialConfig& config, std::size_t n_null_trials) {
    if (n_null_trials < 100) {
        throw std::invalid_argument("calibrate_null: need >= 100 trials");
    }
    const TrialConfig null_cfg = null_variant(config);
    const std::vector<TrialResult> results = run_trials(null_cfg, n_null_trials, nullptr);
    NullCalibration cal;
    cal.peaks.reserve(results.size());
    for (const TrialResult& r : results) cal.peaks.push_back(r.range.peak);
    return cal;
}

DetectionContext make_detection_context(const TrialConfig& config,
                                        const NullCalibration* null_cal) {
    DetectionContext ctx;
    ctx.policy = config.policy;
    ctx.false_alarm_rate = config.false_alarm_rate;
    if (config.policy == DetectionPolicy::EmpiricalNull) {
        ctx.null_cal = null_cal;
    } else {
        ctx.y_baseline = y_baseline_density(tmsv_covariance(config.tmsv));
    }
    return ctx;
}

DetectionEstimate wilson_interval(std::size_t k, std::size_t n) {
    DetectionEstimate est;
    est.n_detected = k;
    est.n_trials = n;
    if (n == 0) return est;
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p_hat = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p_hat + z * z / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z * z / (4.0 * nn * nn)) / denom;
    est.p = p_hat;
    est.ci_low = k == 0 ? 0.0 : std::max(0.0, center - half);
    est.ci_high = k == n ? 1.0 : std::min(1.0, center + half);
    return est;
}

DetectionEstimate estimate_detection_probability(const TrialConfig& config,
                                                 const NullCalibration& null_cal,
                                                 double false_alarm_rate) {
    TrialConfig cfg = config;
    cfg.false_alarm_rate = false_alarm_rate;
    const DetectionContext ctx = [&] {
        DetectionContext c = make_detection_context(cfg, &null_cal);
        c.false_alarm_rate = false_alarm_rate;
        return c;
    }();
    const std::vector<TrialResult> results = run_trials(cfg, cfg.n_trials, &ctx);
    std::size_t detected = 0;
    for (const TrialResult& r : results) detected += r.detected ? 1u : 0u;
    return wilson_interval(detected, results.size());
}

SweepResult sweep_eta_intensity(const TrialConfig& config, const std::vector<double>& eta_grid,
                                const std::vector<double>& lo_intensity_grid,
                                double false_alarm_rate) {
    if (eta_grid.empty() || lo_intensity_grid.empty()) {
        throw std::invalid_argument("sweep_eta_intensity: grids must be non-empty");
    }
    SweepResult out;
    for (const double lo_i : lo_intensity_grid) {
        TrialConfig col_cfg = config;
        col_cfg.homodyne.lo_intensity = lo_i;
        col_cfg.false_alarm_rate = false_alarm_rate;

        NullCalibration null_cal;
        if (col_cfg.policy == DetectionPolicy::EmpiricalNull) {
            null_cal = calibrate_null(col_cfg, col_cfg.n_null_trials);
        }

        std::vector<SweepCell> column;
        for (const double eta : eta_grid) {
            TrialConfig cell_cfg = col_cfg;
            cell_cfg.channel.eta = eta;
            cell_cfg.channel.target_present = eta > 0.0;

            const DetectionContext ctx = make_detection_context(cell_cfg, &null_cal);
            const std::vector<TrialResult> results =
                run_trials(cell_cfg, cell_cfg.n_trials, &ctx);
            std::size_t detected = 0;
            for (const TrialResult& r : results) detected += r.detected ? 1u : 0u;

            SweepCell cell;
            cell.eta = eta;
            cell.lo_intensity = lo_i;
            cell.det = wilson_interval(detected, results.size());
            column.push_back(cell);
        }

        SweepColumnCrossing crossing;
        crossing.lo_intensity = lo_i;
        for (std::size_t i = 0; i + 1 < column.size(); ++i) {
            const SweepCell& a = column[i];
            const SweepCell& b = column[i + 1];
            if (a.eta <= 0.0 || b.eta <= 0.0) continue;
            if (a.det.p < 0.5 && b.det.p >= 0.5) {
                const double la = std::log(a.eta);
                const double lb = std::log(b.eta);
                const double f = (0.5 - a.det.p) / (b.det.p - a.det.p);
                crossing.eta_cross = std::exp(la + f * (lb - la));
                crossing.found = true;
                column[i + 1].crossing_flag = true;
                break;
            }
        }
        out.crossings.push_back(crossing);
        out.cells.insert(out.cells.end(), column.begin(), column.end());
    }
    return out;
}

std::pair<double, double> mean_debiased_peak_density(const std::vector<TrialResult>& results) {
    if (results.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (const TrialResult& r : results) mean += r.peak_density - r.peak_bias_density;
    mean /= static_cast<double>(results.size());
    double acc = 0.0;
    for (const TrialResult& r : results) {
        const double d = r.peak_density - r.peak_bias_density - mean;
        acc += d * d;
    }
    const double se = results.size() > 1
                          ? std::sqrt(acc / static_cast<double>(results.size() - 1) /
                                      static_cast<double>(results.size()))
                          : 0.0;
    return {mean, se};
}

namespace {

PipelineSummary summarize_pipeline(const TrialConfig& config, double false_alarm_rate,
                                   const char* name) {
    TrialConfig cfg = config;
    cfg.false_alarm_rate = false_alarm_rate;

    NullCalibration null_cal;
    if (cfg.policy == DetectionPolicy::EmpiricalNull) {
        null_cal = calibrate_null(cfg, cfg.n_null_trials);
    }
    const DetectionContext ctx = make_detection_context(cfg, &null_cal);
    const std::vector<TrialResult> results = run_trials(cfg, cfg.n_trials, &ctx);

    PipelineSummary s;
    s.name = name;
    std::tie(s.peak_density_mc, s.peak_density_se) = mean_debiased_peak_density(results);
    double snr = 0.0;
    std::size_t detected = 0;
    for (const TrialResult& r : results) {
        snr += r.range.snr;
        detected += r.detected ? 1u : 0u;
    }
    s.mean_snr = snr / static_cast<double>(results.size());
    s.det = wilson_interval(detected, results.size());

    if (cfg.source_kind == SourceKind::Tmsv) {
        s.peak_density_pred = predicted_quantum_peak(
            cfg.channel.target_present ? cfg.channel.eta : 0.0, cfg.homodyne.lo_intensity,
            cfg.tmsv.r, PeakConvention::Standard);
    } else {
        s.peak_density_pred = predicted_classical_peak(
            cfg.channel.target_present ? cfg.channel.eta : 0.0, cfg.homodyne.lo_intensity,
            cfg.classical.flux_b, cfg.classical.flux_d, cfg.classical.d_strength);
    }
    return s;
}

} // namespace

ComparisonReport compare_quantum_classical(const TrialConfig& config_q,
                                           const TrialConfig& config_c,
                                           double false_alarm_rate) {
    if (!(config_q.grid == config_c.grid)) {
        throw std::invalid_argument("compare_quantum_classical: grids must match");
    }
    if (config_q.source_kind != SourceKind::Tmsv ||
        config_c.source_kind != SourceKind::Classical) {
        throw std::invalid_argument(
            "compare_quantum_classical: expects a tmsv config and a classical config");
    }

    ComparisonReport report;
    report.quantum = summarize_pipeline(config_q, false_alarm_rate, "quantum");
    report.classical = summarize_pipeline(config_c, false_alarm_rate, "classical");
    report.ratio_mc = report.classical.peak_density_mc != 0.0
                          ? report.quantum.peak_density_mc / report.classical.peak_density_mc
                          : 0.0;
    report.ratio_pred = report.classical.peak_density_pred != 0.0
                            ? report.quantum.peak_density_pred / report.classical.peak_density_pred
                            : 0.0;
    return report;
}

} // namespace qir
