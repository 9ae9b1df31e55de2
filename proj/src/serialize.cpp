#include "d2d/serialize.hpp"

#include <cmath>

#include "d2d/format.hpp"

namespace d2d {

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const AllocationResult& r) {
    nlohmann::json j;
    j["algorithm"] = r.algorithm;
    j["sum_rate"] = r.sum_rate;
    j["per_rb"] = r.assignment.per_rb;
    j["denied"] = r.assignment.denied;

    auto p_c = nlohmann::json::array();
    auto sinr_c = nlohmann::json::array();
    for (std::size_t i = 0; i < r.powers.p_c.size(); ++i) {
        p_c.push_back(finite_or_null(watts_to_dbm(r.powers.p_c[i])));
        sinr_c.push_back(finite_or_null(linear_to_db(r.sinr_c[i])));
    }
    auto p_d = nlohmann::json::array();
    auto sinr_d = nlohmann::json::array();
    for (std::size_t k = 0; k < r.powers.p_d.size(); ++k) {
        p_d.push_back(finite_or_null(watts_to_dbm(r.powers.p_d[k])));
        sinr_d.push_back(finite_or_null(linear_to_db(r.sinr_d[k])));
    }
    j["p_c_dbm"] = std::move(p_c);
    j["p_d_dbm"] = std::move(p_d);
    j["sinr_c_db"] = std::move(sinr_c);
    j["sinr_d_db"] = std::move(sinr_d);
    j["rate_c"] = r.rate_c;
    j["rate_d"] = r.rate_d;
    j["counters"] = {{"matching_states", r.counters.matching_states},
                     {"signaling_gains", r.counters.signaling_gains}};
    return j;
}

std::string to_json_text(const AllocationResult& result, int indent) { return to_json(result).dump(indent); }

}  // namespace d2d
