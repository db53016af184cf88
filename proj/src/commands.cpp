#include "qir/commands.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "qir/config.hpp"
#include "qir/csv.hpp"
#include "qir/experiment.hpp"
#include "qir/svg_plot.hpp"

namespace qir {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> k_series_header = {"lag_bins", "c1",  "c2",       "s",
                                                  "se1",      "se2", "n_overlap"};
const std::vector<std::string> k_sweep_header = {"eta",    "lo_intensity", "p_detect",
                                                 "ci_low", "ci_high",      "crossing_flag"};
const std::vector<std::string> k_compare_header = {"pipeline", "peak_density_mc",
                                                   "peak_density_pred", "snr", "p_detect"};

RunConfig load_with_overrides(const std::string& path, const CliOverrides& overrides) {
    RunConfig cfg = RunConfig::load(path);
    if (overrides.seed) cfg.trial.master_seed = *overrides.seed;
    if (overrides.trials) cfg.trial.n_trials = *overrides.trials;
    cfg.trial.validate();
    return cfg;
}

std::string series_csv(const CorrelationSeries& series) {
    CsvTable table;
    table.header = k_series_header;
    for (std::size_t i = 0; i < series.size(); ++i) {
        table.rows.push_back({std::to_string(series.lags[i]), format_double(series.c1[i]),
                              format_double(series.c2[i]), format_double(series.s[i]),
                              format_double(series.se1[i]), format_double(series.se2[i]),
                              std::to_string(series.n_overlap[i])});
    }
    return table.serialize();
}

std::string trial_results_csv(const std::vector<TrialResult>& results) {
    CsvTable table;
    table.header = {"trial_index", "detected", "lag_hat", "distance_m", "peak_density", "snr"};
    for (const TrialResult& r : results) {
        table.rows.push_back({std::to_string(r.trial_index), r.detected ? "1" : "0",
                              std::to_string(r.range.lag_hat), format_double(r.range.distance_m),
                              format_double(r.peak_density), format_double(r.range.snr)});
    }
    return table.serialize();
}

int run_guarded(const char* what, const std::function<void()>& body) {
    try {
        body();
        return k_exit_ok;
    } catch (const std::invalid_argument& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return k_exit_config;
    } catch (const std::exception& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return k_exit_runtime;
    }
}

} // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const CliOverrides& overrides) {
    return run_guarded("simulate", [&] {
        const RunConfig cfg = load_with_overrides(config_path, overrides);
        const TrialConfig& t = cfg.trial;
        fs::create_directories(out_dir);

        NullCalibration null_cal;
        if (t.policy == DetectionPolicy::EmpiricalNull) {
            null_cal = calibrate_null(t, t.n_null_trials);
        }
        const DetectionContext ctx = make_detection_context(t, &null_cal);

        const std::vector<TrialResult> results = run_trials(t, t.n_trials, &ctx);
        CorrelationSeries first_series;
        run_trial(t, 0, &ctx, &first_series);

        write_file((fs::path(out_dir) / "correlation_series.csv").string(),
                   series_csv(first_series));
        write_file((fs::path(out_dir) / "trial_results.csv").string(),
                   trial_results_csv(results));
        write_file((fs::path(out_dir) / "run_manifest.txt").string(), cfg.serialize());
    });
}

int cmd_sweep(const std::string& config_path, const std::string& spec_path,
              const std::string& out_dir, const CliOverrides& overrides) {
    return run_guarded("sweep", [&] {
        RunConfig cfg = load_with_overrides(config_path, overrides);
        const SweepSpec spec = SweepSpec::load(spec_path);
        if (spec.trials > 0) cfg.trial.n_trials = spec.trials;
        fs::create_directories(out_dir);

        CsvTable table;
        table.header = k_sweep_header;
        for (std::size_t col = 0; col < spec.lo_intensity_values.size(); ++col) {
            TrialConfig col_cfg = cfg.trial;
            if (!spec.n_bins_per_column.empty()) {
                col_cfg.grid.n_bins = spec.n_bins_per_column[col];
            }
            const SweepResult result = sweep_eta_intensity(
                col_cfg, spec.eta_values, {spec.lo_intensity_values[col]},
                col_cfg.false_alarm_rate);
            for (const SweepCell& cell : result.cells) {
                table.rows.push_back({format_double(cell.eta), format_double(cell.lo_intensity),
                                      format_double(cell.det.p), format_double(cell.det.ci_low),
                                      format_double(cell.det.ci_high),
                                      cell.crossing_flag ? "1" : "0"});
            }
        }
        write_file((fs::path(out_dir) / "sweep.csv").string(), table.serialize());
        write_file((fs::path(out_dir) / "run_manifest.txt").string(), cfg.serialize());
    });
}

int cmd_compare(const std::string& config_q_path, const std::string& config_c_path,
                const std::string& out_dir, const CliOverrides& overrides) {
    return run_guarded("compare", [&] {
        const RunConfig cfg_q = load_with_overrides(config_q_path, overrides);
        const RunConfig cfg_c = load_with_overrides(config_c_path, overrides);
        fs::create_directories(out_dir);

        const ComparisonReport report =
            compare_quantum_classical(cfg_q.trial, cfg_c.trial, cfg_q.trial.false_alarm_rate);

        CsvTable table;
        table.header = k_compare_header;
        for (const PipelineSummary* s : {&report.quantum, &report.classical}) {
            table.rows.push_back({s->name, format_double(s->peak_density_mc),
                                  format_double(s->peak_density_pred), format_double(s->mean_snr),
                                  format_double(s->det.p)});
        }
        write_file((fs::path(out_dir) / "compare.csv").string(), table.serialize());
        write_file((fs::path(out_dir) / "run_manifest_quantum.txt").string(), cfg_q.serialize());
        write_file((fs::path(out_dir) / "run_manifest_classical.txt").string(),
                   cfg_c.serialize());
    });
}

int cmd_plot(const std::string& csv_path, const std::string& out_svg) {
    return run_guarded("plot", [&] {
        const CsvTable table = CsvTable::load(csv_path);
        if (table.rows.empty()) {
            throw std::invalid_argument("csv has no data rows: '" + csv_path + "'");
        }

        std::vector<PlotSeries> series;
        PlotOptions options;

        if (table.header == k_series_header) {
            PlotSeries s_stat{"s", {}, {}}, c1{"c1", {}, {}}, c2{"c2", {}, {}};
            for (const auto& row : table.rows) {
                const double lag = parse_double_exact(row[0]);
                s_stat.x.push_back(lag);
                c1.x.push_back(lag);
                c2.x.push_back(lag);
                c1.y.push_back(parse_double_exact(row[1]));
                c2.y.push_back(parse_double_exact(row[2]));
                s_stat.y.push_back(parse_double_exact(row[3]));
            }
            series = {s_stat, c1, c2};
            options.title = "Correlation scan";
            options.x_label = "lag (bins)";
            options.y_label = "statistic";
        } else if (table.header == k_sweep_header) {
            std::map<std::string, PlotSeries> by_intensity;
            std::vector<std::string> order;
            for (const auto& row : table.rows) {
                const std::string key = row[1];
                if (!by_intensity.count(key)) {
                    by_intensity[key] = PlotSeries{"I = " + key, {}, {}};
                    order.push_back(key);
                }
                by_intensity[key].x.push_back(parse_double_exact(row[0]));
                by_intensity[key].y.push_back(parse_double_exact(row[2]));
            }
            for (const std::string& key : order) series.push_back(by_intensity[key]);
            options.title = "Detection probability sweep";
            options.x_label = "eta";
            options.y_label = "p_detect";
            options.log_x = true;
        } else {
            throw std::invalid_argument("unrecognized csv schema: '" + csv_path + "'");
        }

        write_file(out_svg, render_line_plot(series, options));
    });
}

} // namespace qir
