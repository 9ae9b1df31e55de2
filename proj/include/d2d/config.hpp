#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2d/baselines.hpp"
#include "d2d/scenario.hpp"

namespace d2d {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Algorithm { Proposed, ThreeStep, AllCsi, Exhaustive };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);  // throws ConfigError
std::vector<Algorithm> parse_algorithm_list(const std::string& csv);

/// Defaults follow the reference setup: N = 5, M = 5N, R = 400 m,
/// -114 dBm noise, pathloss exponent 3.5, 24/18 dBm caps, QoS uniform in [5, 20] dB.
struct ExperimentConfig {
    std::size_t n_cues = 5;
    std::optional<std::size_t> n_d2d;  // unset: 5 * n_cues
    double cell_radius = 400.0;
    std::vector<double> cluster_radius_sweep{10.0};
    double total_bandwidth = 10e6;
    double noise_dbm = -114.0;
    std::optional<double> sigma_s2_dbm;
    double pathloss_exponent = 3.5;
    double shadowing_sigma_db = 8.0;
    bool fading = true;
    double p_c_max_dbm = 24.0;
    double p_d_max_dbm = 18.0;
    double qos_low_db = 5.0;
    double qos_high_db = 20.0;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::Proposed, Algorithm::ThreeStep, Algorithm::AllCsi};
    AllCsiScoring all_csi_scoring = AllCsiScoring::ReceivedPower;
    std::size_t threads = 0;  // 0: hardware concurrency
    bool keep_allocations = false;

    std::size_t pairs() const { return n_d2d.value_or(5 * n_cues); }
    ScenarioParams scenario_params(double cluster_radius) const;

    /// Throws ConfigError describing the first problem found.
    void validate() const;
};

/// Applies one `key=value` setting. Unknown keys and malformed values throw ConfigError.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat UTF-8 `key=value` lines; `#` starts a comment; blank lines ignored.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Round-trippable `key=value` rendering of every field.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace d2d
