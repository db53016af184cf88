#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qir/experiment.hpp"

using namespace qir;

namespace {

constexpr double k_pi = std::numbers::pi;

// Small, fast configuration with a clearly visible peak.
TrialConfig fast_config() {
    TrialConfig cfg;
    cfg.grid = SimGrid{1.0, 20000};
    cfg.source_kind = SourceKind::Tmsv;
    cfg.tmsv = SqueezedSourceParams{1.0, 1.0, 1.0};
    cfg.channel = ChannelParams{0.05, 25, 0.9, 1.0, true};
    cfg.homodyne = HomodyneConfig{500.0, k_pi / 2.0, 0.0};
    cfg.correlator = CorrelatorOptions{50, false};
    cfg.policy = DetectionPolicy::EmpiricalNull;
    cfg.false_alarm_rate = 0.05;
    cfg.n_trials = 20;
    cfg.n_null_trials = 120;
    cfg.master_seed = 42;
    return cfg;
}

} // namespace

TEST_CASE("run_trial is deterministic in (config, trial_index)") {
    const TrialConfig cfg = fast_config();
    const TrialResult a = run_trial(cfg, 3);
    const TrialResult b = run_trial(cfg, 3);
    CHECK(a.range.lag_hat == b.range.lag_hat);
    CHECK(a.range.peak == b.range.peak);
    CHECK(a.peak_density == b.peak_density);
    CHECK(a.peak_bias_density == b.peak_bias_density);

    const TrialResult c = run_trial(cfg, 4);
    CHECK(a.range.peak != c.range.peak);
}

TEST_CASE("run_trial finds the configured delay at high SNR") {
    const TrialConfig cfg = fast_config();
    const TrialResult r = run_trial(cfg, 0);
    CHECK(r.range.lag_hat == 25);
    CHECK(r.peak_density > 0.0);
}

TEST_CASE("trial results do not depend on batch scheduling") {
    const TrialConfig cfg = fast_config();
    const std::vector<TrialResult> batch = run_trials(cfg, 8);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const TrialResult solo = run_trial(cfg, i);
        CHECK(batch[i].range.peak == solo.range.peak);
        CHECK(batch[i].range.lag_hat == solo.range.lag_hat);
    }
}

TEST_CASE("calibrate_null is reproducible and sane") {
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 8000;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 30;

    const NullCalibration a = calibrate_null(cfg, 120);
    const NullCalibration b = calibrate_null(cfg, 120);
    CHECK(a.peaks == b.peaks);
    CHECK(a.peaks.size() == 120);

    for (const double p : a.peaks) CHECK(p >= 0.0);
    CHECK(a.quantile(0.95) > a.quantile(0.5));
    CHECK_THROWS_AS((void)calibrate_null(cfg, 99), std::invalid_argument);
}

TEST_CASE("null calibration uses an independent seed space") {
    TrialConfig cfg = fast_config();
    cfg.channel.target_present = false;
    const NullCalibration cal = calibrate_null(cfg, 120);
    const TrialResult direct = run_trial(cfg, 0);
    // Same settings, different seed space: peaks differ.
    CHECK(cal.peaks[0] != direct.range.peak);
}

TEST_CASE("detection at eta = 0 tracks the false-alarm rate") {
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 8000;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 30;
    cfg.channel.target_present = false;
    cfg.n_trials = 100;

    const NullCalibration cal = calibrate_null(cfg, 300);
    const DetectionEstimate est = estimate_detection_probability(cfg, cal, 0.05);
    CHECK(est.n_trials == 100);
    CHECK(est.p >= 0.0);
    CHECK(est.p <= 1.0);
    // 3 sigma binomial window around 5%.
    CHECK(est.p < 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 100.0));
}

TEST_CASE("detection probability rises with eta") {
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 8000;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 30;
    cfg.n_trials = 40;

    const NullCalibration cal = calibrate_null(cfg, 150);

    TrialConfig absent = cfg;
    absent.channel.target_present = false;
    const double p0 = estimate_detection_probability(absent, cal, 0.05).p;

    TrialConfig strong = cfg;
    strong.channel.eta = 0.2;
    const double p1 = estimate_detection_probability(strong, cal, 0.05).p;
    CHECK(p1 > p0);
    CHECK(p1 > 0.9);
}

TEST_CASE("eta I^2 = 20 at modest intensity detects reliably") {
    TrialConfig cfg = fast_config();
    cfg.grid = SimGrid{1.0, 100000};
    cfg.homodyne.lo_intensity = 100.0;
    cfg.channel = ChannelParams{20.0 / (100.0 * 100.0), 25, 0.9, 0.0, true};
    cfg.correlator.max_lag = 40;
    cfg.n_trials = 40;

    const NullCalibration cal = calibrate_null(cfg, 150);
    const DetectionEstimate est = estimate_detection_probability(cfg, cal, 0.05);
    CHECK(est.p > 0.9);
}

TEST_CASE("wilson interval basics") {
    const DetectionEstimate est = wilson_interval(50, 100);
    CHECK(est.p == doctest::Approx(0.5));
    CHECK(est.ci_low > 0.39);
    CHECK(est.ci_high < 0.61);
    CHECK(est.ci_low < est.p);
    CHECK(est.ci_high > est.p);

    const DetectionEstimate zero = wilson_interval(0, 100);
    CHECK(zero.p == 0.0);
    CHECK(zero.ci_low == 0.0);
    CHECK(zero.ci_high > 0.0);
}

TEST_CASE("sweep: single cell is consistent and flags crossings coherently") {
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 8000;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 30;
    cfg.n_trials = 30;
    cfg.n_null_trials = 150;

    const SweepResult sweep =
        sweep_eta_intensity(cfg, {0.001, 0.05, 0.3}, {cfg.homodyne.lo_intensity}, 0.05);
    CHECK(sweep.cells.size() == 3);
    CHECK(sweep.crossings.size() == 1);

    // Monotone grid here; if a crossing is flagged the p values must bracket 0.5.
    for (std::size_t i = 0; i < sweep.cells.size(); ++i) {
        if (sweep.cells[i].crossing_flag) {
            CHECK(i > 0);
            CHECK(sweep.cells[i - 1].det.p < 0.5);
            CHECK(sweep.cells[i].det.p >= 0.5);
        }
    }
    if (sweep.crossings[0].found) {
        CHECK(sweep.crossings[0].eta_cross > 0.001);
        CHECK(sweep.crossings[0].eta_cross <= 0.3);
    }

    CHECK_THROWS_AS((void)sweep_eta_intensity(cfg, {}, {100.0}, 0.05), std::invalid_argument);
}

TEST_CASE("sweep: eta = 0 cell sits at the false-alarm rate; p is flat in I at fixed eta") {
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 8000;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 30;
    cfg.n_trials = 60;
    cfg.n_null_trials = 200;

    const SweepResult sweep = sweep_eta_intensity(cfg, {0.0, 0.08}, {300.0, 600.0}, 0.05);
    REQUIRE(sweep.cells.size() == 4);

    for (const SweepCell& cell : sweep.cells) {
        if (cell.eta == 0.0) {
            // 3 sigma binomial window around the nominal rate.
            CHECK(cell.det.p < 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 60.0));
        }
    }
    // Same eta, different I: detection probabilities agree within joined CIs
    // under the null-calibrated policy (the statistic and its floor share the
    // I^2 scale).
    const SweepCell& a = sweep.cells[1];
    const SweepCell& b = sweep.cells[3];
    CHECK(a.eta == b.eta);
    CHECK(a.det.ci_low <= b.det.ci_high);
    CHECK(b.det.ci_low <= a.det.ci_high);
}

TEST_CASE("sweep: single cell reproduces estimate_detection_probability") {
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 8000;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 30;
    cfg.n_trials = 30;
    cfg.n_null_trials = 150;
    cfg.channel.eta = 0.08;

    const SweepResult sweep =
        sweep_eta_intensity(cfg, {0.08}, {cfg.homodyne.lo_intensity}, 0.05);
    const NullCalibration cal = calibrate_null(cfg, cfg.n_null_trials);
    const DetectionEstimate direct = estimate_detection_probability(cfg, cal, 0.05);
    CHECK(sweep.cells.size() == 1);
    CHECK(sweep.cells[0].det.p == direct.p);
    CHECK(sweep.cells[0].det.n_detected == direct.n_detected);
}

TEST_CASE("squared-estimator bias: on null data the floor equals the variance term") {
    // With no target the true correlations vanish, so E[s] per lag is
    // Var(c1) + Var(c2), which se1^2 + se2^2 estimates.
    TrialConfig cfg = fast_config();
    cfg.grid.n_bins = 50000;
    cfg.channel.target_present = false;
    cfg.channel.delay_bins = 10;
    cfg.correlator.max_lag = 100;

    CorrelationSeries series;
    (void)run_trial(cfg, 0, nullptr, &series);

    double raw = 0.0, bias = 0.0, debiased = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        raw += series.s[k];
        bias += series.se1[k] * series.se1[k] + series.se2[k] * series.se2[k];
        debiased += series.s[k] - series.se1[k] * series.se1[k] -
                    series.se2[k] * series.se2[k];
    }
    raw /= static_cast<double>(series.size());
    bias /= static_cast<double>(series.size());
    debiased /= static_cast<double>(series.size());

    CHECK(raw == doctest::Approx(bias).epsilon(0.25));
    CHECK(std::abs(debiased) < 0.25 * raw);
}

TEST_CASE("classical pipeline trial recovers the delay") {
    TrialConfig cfg;
    cfg.grid = SimGrid{1.0, 50000};
    cfg.source_kind = SourceKind::Classical;
    cfg.classical = ClassicalSourceParams{0.1, 1.0, 1.0};
    cfg.channel = ChannelParams{0.05, 12, 0.4, 0.0, true};
    cfg.homodyne = HomodyneConfig{1000.0, k_pi / 2.0, 0.0};
    cfg.correlator = CorrelatorOptions{30, false};
    cfg.master_seed = 5;

    const TrialResult r = run_trial(cfg, 0);
    CHECK(r.range.lag_hat == 12);
}

TEST_CASE("compare_quantum_classical favors the entangled source") {
    TrialConfig q = fast_config();
    q.grid.n_bins = 40000;
    q.channel = ChannelParams{0.02, 10, 0.9, 0.0, true};
    q.correlator.max_lag = 25;
    q.homodyne.lo_intensity = 300.0;
    q.n_trials = 25;
    q.n_null_trials = 120;

    TrialConfig c = q;
    c.source_kind = SourceKind::Classical;
    c.classical = ClassicalSourceParams{0.1, 1.0, 1.0};

    const ComparisonReport report = compare_quantum_classical(q, c, 0.05);
    CHECK(report.quantum.peak_density_mc > report.classical.peak_density_mc);
    CHECK(report.ratio_pred > 10.0);
    CHECK(report.quantum.det.p >= report.classical.det.p);

    TrialConfig mismatched = c;
    mismatched.grid.n_bins = 20000;
    CHECK_THROWS_AS((void)compare_quantum_classical(q, mismatched, 0.05), std::invalid_argument);
}

TEST_CASE("dt conversion: peak densities are grid-invariant") {
    TrialConfig coarse = fast_config();
    coarse.grid = SimGrid{1.0, 40000};
    coarse.channel = ChannelParams{0.05, 20, 0.9, 0.0, true};
    coarse.correlator.max_lag = 40;
    coarse.n_trials = 30;

    TrialConfig fine = coarse;
    fine.grid = SimGrid{0.5, 80000};
    fine.channel.delay_bins = 40; // same physical delay
    fine.correlator.max_lag = 80;

    const auto res_coarse = run_trials(coarse, coarse.n_trials);
    const auto res_fine = run_trials(fine, fine.n_trials);
    const auto [mc, se_c] = mean_debiased_peak_density(res_coarse);
    const auto [mf, se_f] = mean_debiased_peak_density(res_fine);

    const double pred = predicted_quantum_peak(0.05, coarse.homodyne.lo_intensity, coarse.tmsv.r,
                                               PeakConvention::Standard);
    CHECK(std::abs(mc - pred) < 4.0 * se_c);
    CHECK(std::abs(mf - pred) < 4.0 * se_f);
}

TEST_CASE("config validation catches inconsistent settings") {
    TrialConfig cfg = fast_config();
    cfg.correlator.max_lag = 10; // below delay_bins = 25
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    TrialConfig cfg2 = fast_config();
    cfg2.source_kind = SourceKind::Classical;
    cfg2.policy = DetectionPolicy::YBaseline;
    CHECK_THROWS_AS(cfg2.validate(), std::invalid_argument);

    TrialConfig cfg3 = fast_config();
    cfg3.n_trials = 0;
    CHECK_THROWS_AS(cfg3.validate(), std::invalid_argument);
}
