#pragma once

#include <map>
#include <string>

#include "qir/experiment.hpp"

namespace qir {

/// Plain key-value run configuration (`key = value`, `#` comments).
/// Unknown keys are rejected; missing keys take the documented defaults.
struct RunConfig {
    TrialConfig trial;

    static RunConfig defaults();

    /// Parses file contents. Throws std::invalid_argument with a one-line
    /// diagnostic on unknown keys, bad values, or violated invariants.
    static RunConfig parse(const std::string& text);

    static RunConfig load(const std::string& path);

    /// Canonical serialization: every key, resolved, in a fixed order.
    /// The output re-parses to an identical config (manifest contract).
    std::string serialize() const;
};

/// Sweep specification (same key-value format): `eta`, `lo_intensity` as
/// comma-separated lists, optional per-column `n_bins` list and `trials`.
struct SweepSpec {
    std::vector<double> eta_values;
    std::vector<double> lo_intensity_values;
    std::vector<std::size_t> n_bins_per_column; // empty = config n_bins everywhere
    std::size_t trials = 0;                     // 0 = config n_trials

    static SweepSpec parse(const std::string& text);
    static SweepSpec load(const std::string& path);
};

} // namespace qir
