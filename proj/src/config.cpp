#include "d2d/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "d2d/format.hpp"

namespace d2d {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Proposed: return "proposed";
        case Algorithm::ThreeStep: return "three_step";
        case Algorithm::AllCsi: return "all_csi";
        case Algorithm::Exhaustive: return "exhaustive";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "proposed") return Algorithm::Proposed;
    if (name == "three_step") return Algorithm::ThreeStep;
    if (name == "all_csi") return Algorithm::AllCsi;
    if (name == "exhaustive") return Algorithm::Exhaustive;
    throw ConfigError("unknown algorithm '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& key, const std::string& v) {
    double x = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
    }
    return x;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw ConfigError("'" + key + "': expected a non-negative integer, got '" + v + "'");
    }
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("'" + key + "': expected true/false, got '" + v + "'");
}

}  // namespace

std::vector<Algorithm> parse_algorithm_list(const std::string& csv) {
    std::vector<Algorithm> out;
    for (const auto& name : split_list(csv)) {
        const Algorithm a = parse_algorithm(name);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    if (out.empty()) throw ConfigError("algorithm list is empty");
    return out;
}

ScenarioParams ExperimentConfig::scenario_params(double cluster_radius) const {
    ScenarioParams p;
    p.n_cues = n_cues;
    p.n_d2d = pairs();
    p.cell_radius = cell_radius;
    p.cluster_radius = cluster_radius;
    p.total_bandwidth = total_bandwidth;
    p.noise_dbm = noise_dbm;
    p.sigma_s2_dbm = sigma_s2_dbm;
    p.channel = {pathloss_exponent, shadowing_sigma_db, fading};
    p.p_c_max_dbm = p_c_max_dbm;
    p.p_d_max_dbm = p_d_max_dbm;
    p.qos_low_db = qos_low_db;
    p.qos_high_db = qos_high_db;
    return p;
}

void ExperimentConfig::validate() const {
    if (n_cues == 0) throw ConfigError("n_cues must be at least 1");
    if (!(cell_radius > 0.0)) throw ConfigError("cell_radius must be positive");
    if (cluster_radius_sweep.empty()) throw ConfigError("cluster_radius sweep is empty");
    for (double r : cluster_radius_sweep) {
        if (!(r > 0.0) || !(r < cell_radius)) throw ConfigError("cluster radius must lie in (0, cell_radius)");
    }
    if (!(pathloss_exponent > 2.0)) throw ConfigError("pathloss_exponent must exceed 2");
    if (shadowing_sigma_db < 0.0) throw ConfigError("shadowing_sigma_db must be non-negative");
    if (qos_high_db < qos_low_db) throw ConfigError("qos_high_db below qos_low_db");
    if (trials == 0) throw ConfigError("trials must be at least 1");
    if (algorithms.empty()) throw ConfigError("no algorithms selected");
    if (std::find(algorithms.begin(), algorithms.end(), Algorithm::Exhaustive) != algorithms.end() &&
        (n_cues > kExhaustiveMaxCues || pairs() > kExhaustiveMaxPairs)) {
        throw ConfigError("exhaustive requires n_cues <= " + std::to_string(kExhaustiveMaxCues) +
                          " and n_d2d <= " + std::to_string(kExhaustiveMaxPairs));
    }
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "n_cues") cfg.n_cues = parse_unsigned(key, v);
    else if (key == "n_d2d") {
        if (v == "auto") cfg.n_d2d.reset();
        else cfg.n_d2d = parse_unsigned(key, v);
    }
    else if (key == "cell_radius") cfg.cell_radius = parse_number(key, v);
    else if (key == "cluster_radius") {
        cfg.cluster_radius_sweep.clear();
        for (const auto& item : split_list(v)) cfg.cluster_radius_sweep.push_back(parse_number(key, item));
    }
    else if (key == "total_bandwidth") cfg.total_bandwidth = parse_number(key, v);
    else if (key == "noise_dbm") cfg.noise_dbm = parse_number(key, v);
    else if (key == "sigma_s2_dbm") {
        if (v == "off") cfg.sigma_s2_dbm.reset();
        else cfg.sigma_s2_dbm = parse_number(key, v);
    }
    else if (key == "pathloss_exponent") cfg.pathloss_exponent = parse_number(key, v);
    else if (key == "shadowing_sigma_db") cfg.shadowing_sigma_db = parse_number(key, v);
    else if (key == "fading") cfg.fading = parse_bool(key, v);
    else if (key == "p_c_max_dbm") cfg.p_c_max_dbm = parse_number(key, v);
    else if (key == "p_d_max_dbm") cfg.p_d_max_dbm = parse_number(key, v);
    else if (key == "qos_low_db") cfg.qos_low_db = parse_number(key, v);
    else if (key == "qos_high_db") cfg.qos_high_db = parse_number(key, v);
    else if (key == "trials") cfg.trials = parse_unsigned(key, v);
    else if (key == "seed") cfg.seed = parse_unsigned(key, v);
    else if (key == "algorithms") cfg.algorithms = parse_algorithm_list(v);
    else if (key == "all_csi_scoring") {
        if (v == "received_power") cfg.all_csi_scoring = AllCsiScoring::ReceivedPower;
        else if (v == "gain_only") cfg.all_csi_scoring = AllCsiScoring::GainOnly;
        else throw ConfigError("'all_csi_scoring': expected received_power or gain_only");
    }
    else if (key == "threads") cfg.threads = parse_unsigned(key, v);
    else throw ConfigError("unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        try {
            apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return parse_config(in, std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "n_cues=" << cfg.n_cues << '\n';
    out << "n_d2d=" << (cfg.n_d2d ? std::to_string(*cfg.n_d2d) : std::string("auto")) << '\n';
    out << "cell_radius=" << format_double(cfg.cell_radius) << '\n';
    out << "cluster_radius=";
    for (std::size_t i = 0; i < cfg.cluster_radius_sweep.size(); ++i) {
        out << (i ? "," : "") << format_double(cfg.cluster_radius_sweep[i]);
    }
    out << '\n';
    out << "total_bandwidth=" << format_double(cfg.total_bandwidth) << '\n';
    out << "noise_dbm=" << format_double(cfg.noise_dbm) << '\n';
    out << "sigma_s2_dbm=" << (cfg.sigma_s2_dbm ? format_double(*cfg.sigma_s2_dbm) : std::string("off")) << '\n';
    out << "pathloss_exponent=" << format_double(cfg.pathloss_exponent) << '\n';
    out << "shadowing_sigma_db=" << format_double(cfg.shadowing_sigma_db) << '\n';
    out << "fading=" << (cfg.fading ? "true" : "false") << '\n';
    out << "p_c_max_dbm=" << format_double(cfg.p_c_max_dbm) << '\n';
    out << "p_d_max_dbm=" << format_double(cfg.p_d_max_dbm) << '\n';
    out << "qos_low_db=" << format_double(cfg.qos_low_db) << '\n';
    out << "qos_high_db=" << format_double(cfg.qos_high_db) << '\n';
    out << "trials=" << cfg.trials << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "algorithms=";
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) out << (i ? "," : "") << to_string(cfg.algorithms[i]);
    out << '\n';
    out << "all_csi_scoring="
        << (cfg.all_csi_scoring == AllCsiScoring::ReceivedPower ? "received_power" : "gain_only") << '\n';
    out << "threads=" << cfg.threads << '\n';
    return out.str();
}

}  // namespace d2d
