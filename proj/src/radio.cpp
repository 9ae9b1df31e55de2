#include "d2d/radio.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace d2d {

Assignment Assignment::all_denied(std::size_t n_cues, std::size_t n_d2d) {
    Assignment a;
    a.per_rb.resize(n_cues);
    a.denied.resize(n_d2d);
    for (std::size_t j = 0; j < n_d2d; ++j) a.denied[j] = j;
    return a;
}

std::optional<std::size_t> Assignment::rb_of(std::size_t pair) const {
    for (std::size_t i = 0; i < per_rb.size(); ++i) {
        if (std::find(per_rb[i].begin(), per_rb[i].end(), pair) != per_rb[i].end()) return i;
    }
    return std::nullopt;
}

std::size_t Assignment::admitted_count() const {
    std::size_t k = 0;
    for (const auto& rb : per_rb) k += rb.size();
    return k;
}

std::string Assignment::structural_error(std::size_t n_d2d) const {
    std::vector<int> seen(n_d2d, 0);
    for (const auto& rb : per_rb) {
        for (std::size_t j : rb) {
            if (j >= n_d2d) return "pair index " + std::to_string(j) + " out of range";
            if (seen[j]++ > 0) return "pair " + std::to_string(j) + " assigned more than once";
        }
    }
    if (!std::is_sorted(denied.begin(), denied.end())) return "denied list not ascending";
    std::set<std::size_t> denied_set(denied.begin(), denied.end());
    if (denied_set.size() != denied.size()) return "duplicate in denied list";
    for (std::size_t j = 0; j < n_d2d; ++j) {
        const bool is_denied = denied_set.count(j) > 0;
        if (is_denied == (seen[j] > 0)) {
            return "pair " + std::to_string(j) + (is_denied ? " both admitted and denied" : " neither admitted nor denied");
        }
    }
    if (!denied_set.empty() && *denied_set.rbegin() >= n_d2d) return "denied index out of range";
    return {};
}

void Scenario::validate() const {
    const std::size_t n = n_cues();
    const std::size_t m = n_d2d();
    if (n == 0) throw std::invalid_argument("scenario: no CUEs");
    if (layout.n_cues() != n || layout.n_d2d() != m || gains.h_db.size() != m ||
        static_cast<std::size_t>(gains.h_cd.rows()) != n || static_cast<std::size_t>(gains.h_cd.cols()) != m ||
        static_cast<std::size_t>(gains.h_dd.rows()) != m || static_cast<std::size_t>(gains.h_dd.cols()) != m ||
        qos.gamma_c_min.size() != n || qos.gamma_d_min.size() != m) {
        throw std::invalid_argument("scenario: inconsistent dimensions");
    }
    if (!(noise.sigma_n2 > 0.0) || noise.sigma_s2 < 0.0) throw std::invalid_argument("scenario: bad noise model");
    if (!(p_c_max > 0.0) || !(p_d_max > 0.0)) throw std::invalid_argument("scenario: power caps must be positive");
    for (double g : qos.gamma_c_min) if (!(g > 0.0)) throw std::invalid_argument("scenario: CUE QoS must be > 0");
    for (double g : qos.gamma_d_min) if (!(g > 0.0)) throw std::invalid_argument("scenario: D2D QoS must be > 0");
}

double sinr_cue(const Scenario& scn, const Assignment& asg, const PowerVector& pw, std::size_t cue) {
    double interference = 0.0;
    for (std::size_t j : asg.per_rb.at(cue)) interference += pw.p_d[j] * scn.gains.h_db[j];
    return pw.p_c[cue] * scn.gains.g_cb[cue] / (interference + scn.noise.total());
}

namespace {

double sinr_d2d_in_rb(const Scenario& scn, const std::vector<std::size_t>& rb, std::size_t cue,
                      const PowerVector& pw, std::size_t pair) {
    const auto jj = static_cast<Eigen::Index>(pair);
    double interference = pw.p_c[cue] * scn.gains.h_cd(static_cast<Eigen::Index>(cue), jj);
    for (std::size_t k : rb) {
        if (k != pair) interference += pw.p_d[k] * scn.gains.h_dd(static_cast<Eigen::Index>(k), jj);
    }
    return pw.p_d[pair] * scn.gains.g_d[pair] / (interference + scn.noise.total());
}

}  // namespace

double sinr_d2d(const Scenario& scn, const Assignment& asg, const PowerVector& pw, std::size_t pair) {
    const auto rb = asg.rb_of(pair);
    if (!rb) return 0.0;
    return sinr_d2d_in_rb(scn, asg.per_rb[*rb], *rb, pw, pair);
}

double sum_rate(const Scenario& scn, const Assignment& asg, const PowerVector& pw) {
    double total = 0.0;
    for (std::size_t i = 0; i < asg.per_rb.size(); ++i) {
        total += std::log2(1.0 + sinr_cue(scn, asg, pw, i));
        for (std::size_t j : asg.per_rb[i]) total += std::log2(1.0 + sinr_d2d_in_rb(scn, asg.per_rb[i], i, pw, j));
    }
    return total;
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::Structure: return "structure";
        case Violation::Kind::CueQos: return "cue_qos";
        case Violation::Kind::D2dQos: return "d2d_qos";
        case Violation::Kind::CueCap: return "cue_cap";
        case Violation::Kind::D2dCap: return "d2d_cap";
        case Violation::Kind::NegativePower: return "negative_power";
        case Violation::Kind::DeniedPower: return "denied_power";
    }
    return "unknown";
}

FeasibilityReport check_feasible(const Scenario& scn, const Assignment& asg, const PowerVector& pw) {
    FeasibilityReport report;
    auto add = [&report](Violation v) {
        report.feasible = false;
        report.violations.push_back(std::move(v));
    };

    const std::size_t n = scn.n_cues();
    const std::size_t m = scn.n_d2d();
    if (asg.per_rb.size() != n || pw.p_c.size() != n || pw.p_d.size() != m) {
        add({Violation::Kind::Structure, 0, 0, 0, 0, "dimension mismatch"});
        return report;
    }
    if (auto err = asg.structural_error(m); !err.empty()) {
        add({Violation::Kind::Structure, 0, 0, 0, 0, err});
        return report;
    }

    const double cap_c = scn.p_c_max * (1.0 + kFeasibilityTolerance);
    const double cap_d = scn.p_d_max * (1.0 + kFeasibilityTolerance);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pw.p_c[i];
        if (p < 0.0) add({Violation::Kind::NegativePower, i, p, 0.0, p, "CUE power below zero"});
        if (p > cap_c) add({Violation::Kind::CueCap, i, p, scn.p_c_max, scn.p_c_max - p, "CUE power above cap"});
        const double gamma = sinr_cue(scn, asg, pw, i);
        const double need = scn.qos.gamma_c_min[i];
        if (gamma < need * (1.0 - kFeasibilityTolerance)) {
            add({Violation::Kind::CueQos, i, gamma, need, gamma - need, "CUE SINR below minimum"});
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double p = pw.p_d[j];
        if (p < 0.0) add({Violation::Kind::NegativePower, j, p, 0.0, p, "D2D power below zero"});
        if (p > cap_d) add({Violation::Kind::D2dCap, j, p, scn.p_d_max, scn.p_d_max - p, "D2D power above cap"});
    }
    for (std::size_t j : asg.denied) {
        if (pw.p_d[j] != 0.0) add({Violation::Kind::DeniedPower, j, pw.p_d[j], 0.0, -pw.p_d[j], "denied pair transmits"});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : asg.per_rb[i]) {
            const double gamma = sinr_d2d_in_rb(scn, asg.per_rb[i], i, pw, j);
            const double need = scn.qos.gamma_d_min[j];
            if (gamma < need * (1.0 - kFeasibilityTolerance)) {
                add({Violation::Kind::D2dQos, j, gamma, need, gamma - need, "D2D SINR below minimum"});
            }
        }
    }
    return report;
}

}  // namespace d2d
