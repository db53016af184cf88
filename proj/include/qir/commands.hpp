#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qir {

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
};

/// Exit codes shared by all subcommands: 0 success, 2 configuration or usage
/// error, 3 runtime error. Diagnostics go to stderr, one line each.
inline constexpr int k_exit_ok = 0;
inline constexpr int k_exit_config = 2;
inline constexpr int k_exit_runtime = 3;

/// Writes correlation_series.csv (trial 0), trial_results.csv and
/// run_manifest.txt into out_dir.
int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const CliOverrides& overrides);

/// Writes sweep.csv (plus run_manifest.txt) into out_dir.
int cmd_sweep(const std::string& config_path, const std::string& spec_path,
              const std::string& out_dir, const CliOverrides& overrides);

/// Writes compare.csv (plus both manifests) into out_dir.
int cmd_compare(const std::string& config_q_path, const std::string& config_c_path,
                const std::string& out_dir, const CliOverrides& overrides);

/// Renders a recognized CSV (correlation series or sweep table) to SVG.
int cmd_plot(const std::string& csv_path, const std::string& out_svg);

} // namespace qir
