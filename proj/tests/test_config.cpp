#include "doctest.h"

#include "qir/config.hpp"

using namespace qir;

TEST_CASE("defaults parse and validate") {
    const RunConfig cfg = RunConfig::parse("");
    CHECK(cfg.trial.grid.n_bins == 100000);
    CHECK(cfg.trial.source_kind == SourceKind::Tmsv);
    CHECK(cfg.trial.channel.delay_bins == 150);
    CHECK(cfg.trial.master_seed == 1);
}

TEST_CASE("values, comments and blank lines parse") {
    const std::string text = R"(
# run setup
grid.dt_s = 1e-9
grid.n_bins = 50000

source.kind = classical
source.d_strength = 0.05   # strength
channel.eta = 0.02
channel.delay_bins = 40
correlator.max_lag = 80
experiment.master_seed = 99
)";
    const RunConfig cfg = RunConfig::parse(text);
    CHECK(cfg.trial.grid.dt == 1e-9);
    CHECK(cfg.trial.grid.n_bins == 50000);
    CHECK(cfg.trial.source_kind == SourceKind::Classical);
    CHECK(cfg.trial.classical.d_strength == 0.05);
    CHECK(cfg.trial.channel.eta == 0.02);
    CHECK(cfg.trial.master_seed == 99);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS((void)RunConfig::parse("grid.bins = 10\n"),
                         doctest::Contains("unknown key"), std::invalid_argument);
}

TEST_CASE("malformed lines and values are rejected") {
    CHECK_THROWS_AS((void)RunConfig::parse("grid.dt_s\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("grid.dt_s = fast\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("grid.n_bins = -4\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("source.kind = squeezed\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("channel.target_present = yes\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("grid.dt_s = 1\ngrid.dt_s = 2\n"),
                    std::invalid_argument);
}

TEST_CASE("invariant violations are rejected at parse time") {
    CHECK_THROWS_AS((void)RunConfig::parse("channel.eta = 1.5\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("grid.dt_s = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)RunConfig::parse("source.r = -1\n"), std::invalid_argument);
    // delay beyond max_lag
    CHECK_THROWS_AS((void)RunConfig::parse("channel.delay_bins = 500\n"), std::invalid_argument);
}

TEST_CASE("serialize round-trips to an identical config") {
    const std::string text = "grid.dt_s = 2.5e-10\nchannel.eta = 0.007\nsource.r = 1.25\n"
                             "detect.policy = y_baseline\nexperiment.master_seed = 31\n";
    const RunConfig cfg = RunConfig::parse(text);
    const std::string manifest = cfg.serialize();
    const RunConfig back = RunConfig::parse(manifest);
    CHECK(back.serialize() == manifest);
    CHECK(back.trial.grid.dt == cfg.trial.grid.dt);
    CHECK(back.trial.channel.eta == cfg.trial.channel.eta);
    CHECK(back.trial.policy == DetectionPolicy::YBaseline);
}

TEST_CASE("sweep spec parsing") {
    const SweepSpec spec = SweepSpec::parse(
        "eta = 1e-4, 2e-4, 4e-4\nlo_intensity = 100, 1000\nn_bins = 20000, 200000\ntrials = 16\n");
    CHECK(spec.eta_values.size() == 3);
    CHECK(spec.lo_intensity_values.size() == 2);
    CHECK(spec.n_bins_per_column.size() == 2);
    CHECK(spec.trials == 16);

    CHECK_THROWS_AS((void)SweepSpec::parse("eta = 1e-4\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)SweepSpec::parse("eta = 1e-4\nlo_intensity = 10\nn_bins = 1,2,3\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)SweepSpec::parse("eta = 1e-4\nlo_intensity = 10\nfoo = 1\n"),
                    std::invalid_argument);
}
