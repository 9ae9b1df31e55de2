#include "d2d/scenario.hpp"

#include <stdexcept>

#include "d2d/format.hpp"
#include "d2d/random.hpp"

namespace d2d {

namespace {

Scenario draw(const ScenarioParams& params, std::uint64_t stream_seed) {
    Scenario scn;
    scn.layout = generate_layout(params.n_cues, params.n_d2d, params.cell_radius, params.cluster_radius,
                                 split_seed(stream_seed, 0));
    scn.gains = compute_gains(scn.layout, params.channel, split_seed(stream_seed, 1));
    scn.noise.sigma_n2 = dbm_to_watts(params.noise_dbm);
    scn.noise.sigma_s2 = params.sigma_s2_dbm ? dbm_to_watts(*params.sigma_s2_dbm) : 0.0;
    scn.p_c_max = dbm_to_watts(params.p_c_max_dbm);
    scn.p_d_max = dbm_to_watts(params.p_d_max_dbm);
    scn.rb_bandwidth = params.total_bandwidth / static_cast<double>(params.n_cues);

    Rng rng(split_seed(stream_seed, 2));
    const double span = params.qos_high_db - params.qos_low_db;
    auto threshold = [&] { return db_to_linear(params.qos_low_db + span * uniform01(rng)); };
    scn.qos.gamma_c_min.resize(params.n_cues);
    scn.qos.gamma_d_min.resize(params.n_d2d);
    for (auto& g : scn.qos.gamma_c_min) g = threshold();
    for (auto& g : scn.qos.gamma_d_min) g = threshold();
    return scn;
}

bool cues_servable(const Scenario& scn) {
    for (std::size_t i = 0; i < scn.n_cues(); ++i) {
        if (scn.p_c_max * scn.gains.g_cb[i] / scn.noise.total() < scn.qos.gamma_c_min[i]) return false;
    }
    return true;
}

}  // namespace

namespace {

std::pair<std::size_t, Scenario> first_servable(const ScenarioParams& params, std::uint64_t seed) {
    if (params.qos_high_db < params.qos_low_db) throw std::invalid_argument("scenario: qos range inverted");
    for (std::size_t a = 0; a < kMaxScenarioAttempts; ++a) {
        Scenario scn = draw(params, split_seed(seed, a));
        if (cues_servable(scn)) return {a, std::move(scn)};
    }
    throw std::runtime_error("build_scenario: no servable realization after " +
                             std::to_string(kMaxScenarioAttempts) + " draws");
}

}  // namespace

std::size_t scenario_attempts(const ScenarioParams& params, std::uint64_t seed) {
    return first_servable(params, seed).first;
}

Scenario build_scenario(const ScenarioParams& params, std::uint64_t seed) {
    Scenario scn = first_servable(params, seed).second;
    scn.validate();
    return scn;
}

}  // namespace d2d
