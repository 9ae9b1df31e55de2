#pragma once

#include <cstdint>
#include <optional>

#include "d2d/channel.hpp"
#include "d2d/radio.hpp"

namespace d2d {

/// Physical parameters of one cell draw, in the units they are usually quoted in.
struct ScenarioParams {
    std::size_t n_cues = 5;
    std::size_t n_d2d = 25;
    double cell_radius = 400.0;    // m
    double cluster_radius = 10.0;  // m
    double total_bandwidth = 10e6; // Hz
    double noise_dbm = -114.0;
    std::optional<double> sigma_s2_dbm;  // unset: no signal-processing noise
    ChannelParams channel;
    double p_c_max_dbm = 24.0;
    double p_d_max_dbm = 18.0;
    double qos_low_db = 5.0;
    double qos_high_db = 20.0;
};

/// Upper bound on redraws in build_scenario.
inline constexpr std::size_t kMaxScenarioAttempts = 1000;

/// Draws layout, gains and per-UE QoS thresholds (uniform in dB) from
/// independent streams of `seed`. A realization in which some CUE cannot meet
/// its own QoS even alone at full power admits no feasible allocation, so it
/// is redrawn from the next stream; attempt a uses split_seed(seed, a).
/// Throws std::runtime_error after kMaxScenarioAttempts failures.
Scenario build_scenario(const ScenarioParams& params, std::uint64_t seed);

/// Number of redraws build_scenario needed for this seed (0 when the first draw is usable).
std::size_t scenario_attempts(const ScenarioParams& params, std::uint64_t seed);

}  // namespace d2d
