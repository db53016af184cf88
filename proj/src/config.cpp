#include "qir/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "qir/csv.hpp"

namespace qir {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key or value");
        }
        if (kv.count(key)) {
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        }
        kv[key] = value;
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        return parse_double_exact(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "': not a number: '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config: key '" + key + "': not a non-negative integer: '" +
                                    value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("config: key '" + key + "': expected true or false, got '" +
                                value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(value);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) parts.push_back(cur);
    }
    return parts;
}

} // namespace

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.trial.grid = SimGrid{1.0, 100000};
    cfg.trial.source_kind = SourceKind::Tmsv;
    cfg.trial.tmsv = SqueezedSourceParams{1.0, 1.0, 1.0};
    cfg.trial.classical = ClassicalSourceParams{0.1, 1.0, 1.0};
    cfg.trial.channel = ChannelParams{0.01, 150, 0.7, 10.0, true};
    cfg.trial.homodyne = HomodyneConfig{1000.0, 1.5707963267948966, 0.0};
    cfg.trial.correlator = CorrelatorOptions{200, false};
    cfg.trial.policy = DetectionPolicy::EmpiricalNull;
    cfg.trial.false_alarm_rate = 0.05;
    cfg.trial.n_trials = 100;
    cfg.trial.n_null_trials = 200;
    cfg.trial.master_seed = 1;
    return cfg;
}

RunConfig RunConfig::parse(const std::string& text) {
    const auto kv = parse_key_values(text);
    RunConfig cfg = defaults();
    TrialConfig& t = cfg.trial;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"grid.dt_s", [&](const std::string& k, const std::string& v) { t.grid.dt = parse_double(k, v); }},
        {"grid.n_bins", [&](const std::string& k, const std::string& v) { t.grid.n_bins = parse_u64(k, v); }},
        {"source.kind",
         [&](const std::string& k, const std::string& v) {
             if (v == "tmsv") t.source_kind = SourceKind::Tmsv;
             else if (v == "classical") t.source_kind = SourceKind::Classical;
             else throw std::invalid_argument("config: key '" + k + "': expected tmsv or classical");
         }},
        {"source.r", [&](const std::string& k, const std::string& v) { t.tmsv.r = parse_double(k, v); }},
        {"source.flux_b",
         [&](const std::string& k, const std::string& v) {
             t.tmsv.flux_b = parse_double(k, v);
             t.classical.flux_b = t.tmsv.flux_b;
         }},
        {"source.flux_d",
         [&](const std::string& k, const std::string& v) {
             t.tmsv.flux_d = parse_double(k, v);
             t.classical.flux_d = t.tmsv.flux_d;
         }},
        {"source.d_strength",
         [&](const std::string& k, const std::string& v) { t.classical.d_strength = parse_double(k, v); }},
        {"channel.eta", [&](const std::string& k, const std::string& v) { t.channel.eta = parse_double(k, v); }},
        {"channel.delay_bins",
         [&](const std::string& k, const std::string& v) { t.channel.delay_bins = parse_u64(k, v); }},
        {"channel.phi_b_rad",
         [&](const std::string& k, const std::string& v) { t.channel.phi_b = parse_double(k, v); }},
        {"channel.env_occupancy",
         [&](const std::string& k, const std::string& v) { t.channel.env_occupancy = parse_double(k, v); }},
        {"channel.target_present",
         [&](const std::string& k, const std::string& v) { t.channel.target_present = parse_bool(k, v); }},
        {"homodyne.lo_intensity",
         [&](const std::string& k, const std::string& v) { t.homodyne.lo_intensity = parse_double(k, v); }},
        {"homodyne.phi1_rad",
         [&](const std::string& k, const std::string& v) { t.homodyne.phi1 = parse_double(k, v); }},
        {"homodyne.phi2_rad",
         [&](const std::string& k, const std::string& v) { t.homodyne.phi2 = parse_double(k, v); }},
        {"correlator.max_lag",
         [&](const std::string& k, const std::string& v) { t.correlator.max_lag = parse_u64(k, v); }},
        {"correlator.negative_lags",
         [&](const std::string& k, const std::string& v) { t.correlator.negative_lags = parse_bool(k, v); }},
        {"detect.false_alarm_rate",
         [&](const std::string& k, const std::string& v) { t.false_alarm_rate = parse_double(k, v); }},
        {"detect.policy",
         [&](const std::string& k, const std::string& v) {
             if (v == "empirical_null") t.policy = DetectionPolicy::EmpiricalNull;
             else if (v == "y_baseline") t.policy = DetectionPolicy::YBaseline;
             else
                 throw std::invalid_argument("config: key '" + k +
                                             "': expected empirical_null or y_baseline");
         }},
        {"experiment.n_trials",
         [&](const std::string& k, const std::string& v) { t.n_trials = parse_u64(k, v); }},
        {"experiment.n_null_trials",
         [&](const std::string& k, const std::string& v) { t.n_null_trials = parse_u64(k, v); }},
        {"experiment.master_seed",
         [&](const std::string& k, const std::string& v) { t.master_seed = parse_u64(k, v); }},
    };

    for (const auto& [key, value] : kv) {
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
        it->second(key, value);
    }

    t.validate();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string RunConfig::serialize() const {
    const TrialConfig& t = trial;
    std::ostringstream out;
    out << "grid.dt_s = " << format_double(t.grid.dt) << "\n";
    out << "grid.n_bins = " << t.grid.n_bins << "\n";
    out << "source.kind = " << (t.source_kind == SourceKind::Tmsv ? "tmsv" : "classical") << "\n";
    out << "source.r = " << format_double(t.tmsv.r) << "\n";
    out << "source.flux_b = " << format_double(t.tmsv.flux_b) << "\n";
    out << "source.flux_d = " << format_double(t.tmsv.flux_d) << "\n";
    out << "source.d_strength = " << format_double(t.classical.d_strength) << "\n";
    out << "channel.eta = " << format_double(t.channel.eta) << "\n";
    out << "channel.delay_bins = " << t.channel.delay_bins << "\n";
    out << "channel.phi_b_rad = " << format_double(t.channel.phi_b) << "\n";
    out << "channel.env_occupancy = " << format_double(t.channel.env_occupancy) << "\n";
    out << "channel.target_present = " << (t.channel.target_present ? "true" : "false") << "\n";
    out << "homodyne.lo_intensity = " << format_double(t.homodyne.lo_intensity) << "\n";
    out << "homodyne.phi1_rad = " << format_double(t.homodyne.phi1) << "\n";
    out << "homodyne.phi2_rad = " << format_double(t.homodyne.phi2) << "\n";
    out << "correlator.max_lag = " << t.correlator.max_lag << "\n";
    out << "correlator.negative_lags = " << (t.correlator.negative_lags ? "true" : "false") << "\n";
    out << "detect.false_alarm_rate = " << format_double(t.false_alarm_rate) << "\n";
    out << "detect.policy = "
        << (t.policy == DetectionPolicy::EmpiricalNull ? "empirical_null" : "y_baseline") << "\n";
    out << "experiment.n_trials = " << t.n_trials << "\n";
    out << "experiment.n_null_trials = " << t.n_null_trials << "\n";
    out << "experiment.master_seed = " << t.master_seed << "\n";
    return out.str();
}

SweepSpec SweepSpec::parse(const std::string& text) {
    const auto kv = parse_key_values(text);
    SweepSpec spec;
    for (const auto& [key, value] : kv) {
        if (key == "eta") {
            for (const auto& part : split_list(value)) spec.eta_values.push_back(parse_double(key, part));
        } else if (key == "lo_intensity") {
            for (const auto& part : split_list(value))
                spec.lo_intensity_values.push_back(parse_double(key, part));
        } else if (key == "n_bins") {
            for (const auto& part : split_list(value))
                spec.n_bins_per_column.push_back(parse_u64(key, part));
        } else if (key == "trials") {
            spec.trials = parse_u64(key, value);
        } else {
            throw std::invalid_argument("sweep spec: unknown key '" + key + "'");
        }
    }
    if (spec.eta_values.empty() || spec.lo_intensity_values.empty()) {
        throw std::invalid_argument("sweep spec: eta and lo_intensity lists must be non-empty");
    }
    if (!spec.n_bins_per_column.empty() &&
        spec.n_bins_per_column.size() != spec.lo_intensity_values.size()) {
        throw std::invalid_argument("sweep spec: n_bins list must match lo_intensity list length");
    }
    return spec;
}

SweepSpec SweepSpec::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("sweep spec: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace qir
