#include "d2d/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace d2d {

AllocationResult make_result(const Scenario& scn, std::string algorithm, Assignment asg, PowerVector pw,
                             EffortCounters counters) {
    AllocationResult r;
    r.algorithm = std::move(algorithm);
    r.assignment = std::move(asg);
    r.powers = std::move(pw);
    r.counters = counters;
    const std::size_t n = scn.n_cues();
    const std::size_t m = scn.n_d2d();
    r.sinr_c.resize(n);
    r.rate_c.resize(n);
    r.sinr_d.assign(m, 0.0);
    r.rate_d.assign(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        r.sinr_c[i] = sinr_cue(scn, r.assignment, r.powers, i);
        r.rate_c[i] = std::log2(1.0 + r.sinr_c[i]);
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (!r.assignment.rb_of(j)) continue;
        r.sinr_d[j] = sinr_d2d(scn, r.assignment, r.powers, j);
        r.rate_d[j] = std::log2(1.0 + r.sinr_d[j]);
    }
    r.sum_rate = std::accumulate(r.rate_c.begin(), r.rate_c.end(), 0.0) +
                 std::accumulate(r.rate_d.begin(), r.rate_d.end(), 0.0);
    return r;
}

CuePriority cue_priority(const Scenario& scn) {
    const auto& layout = scn.layout;
    std::vector<double> dist(scn.n_cues());
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = distance(layout.cue_positions[i], layout.bs_position);
    CuePriority p;
    p.order.resize(dist.size());
    std::iota(p.order.begin(), p.order.end(), std::size_t{0});
    std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    return p;
}

CandidateScore select_first_pair(const Scenario& scn, std::size_t cue, const std::vector<std::size_t>& denied) {
    if (denied.empty()) throw std::invalid_argument("select_first_pair: no denied pairs");
    const Position c = scn.layout.cue_positions.at(cue);
    CandidateScore best{denied.front(), -1.0, CandidateScore::Kind::FirstPair};
    for (std::size_t j : denied) {
        const double m = distance(c, scn.layout.d2d_rx_positions[j]);
        if (m > best.score || (m == best.score && j < best.pair)) best = {j, m, CandidateScore::Kind::FirstPair};
    }
    return best;
}

CandidateScore select_next_pair(const Scenario& scn, const RbGroup& group, const PowerSolveOutcome& powers,
                                const std::vector<std::size_t>& denied) {
    if (denied.empty()) throw std::invalid_argument("select_next_pair: no denied pairs");
    const auto& layout = scn.layout;

    std::vector<std::pair<Position, double>> transmitters;
    transmitters.reserve(group.size());
    transmitters.emplace_back(layout.cue_positions[group.cue], powers.powers(0));
    for (std::size_t k = 0; k < group.pairs.size(); ++k) {
        transmitters.emplace_back(layout.d2d_tx_positions[group.pairs[k]], powers.powers(static_cast<Eigen::Index>(k + 1)));
    }

    CandidateScore best{denied.front(), -1.0, CandidateScore::Kind::Subsequent};
    for (std::size_t j : denied) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& [pos, p] : transmitters) {
            if (p > 0.0) m = std::min(m, distance(pos, layout.d2d_rx_positions[j]) / p);
        }
        if (m > best.score || (m == best.score && j < best.pair)) best = {j, m, CandidateScore::Kind::Subsequent};
    }
    return best;
}

namespace {

PowerSolveOutcome evaluate_candidate(const RbGroup& group, const Scenario& scn) {
    if (!spectral_feasibility(group, scn)) return {};
    return min_power_solve(group, scn);
}

void erase_pair(std::vector<std::size_t>& denied, std::size_t pair) {
    denied.erase(std::find(denied.begin(), denied.end(), pair));
}

}  // namespace

AllocationResult run_admission(const Scenario& scn, const AdmissionPolicy& policy) {
    const std::size_t n = scn.n_cues();
    const std::size_t m = scn.n_d2d();
    Assignment asg = Assignment::all_denied(n, m);
    PowerVector pw{std::vector<double>(n, 0.0), std::vector<double>(m, 0.0)};
    EffortCounters counters;
    SignalingLedger ledger;
    if (policy.full_csi) ledger.charge_all(n, m);

    for (std::size_t cue : cue_priority(scn).order) {
        ledger.charge_cue(cue);
        if (asg.denied.empty()) {
            pw.p_c[cue] = scn.p_c_max;
            continue;
        }

        const CandidateScore first = policy.first(scn, cue, asg.denied);
        ledger.charge_candidate(cue, first.pair, std::vector<std::size_t>{});
        ++counters.matching_states;
        RbGroup group{cue, {first.pair}};
        PowerSolveOutcome current = first_pair_powers(scn, cue, first.pair);
        if (!current.feasible) {
            pw.p_c[cue] = scn.p_c_max;
            continue;
        }
        erase_pair(asg.denied, first.pair);

        // One rejection ends admissions for this RB; the rejected pair stays
        // eligible for later RBs.
        while (!asg.denied.empty()) {
            const CandidateScore next = policy.next(scn, group, current, asg.denied);
            ledger.charge_candidate(cue, next.pair, group.pairs);
            ++counters.matching_states;
            RbGroup enlarged = group;
            enlarged.pairs.push_back(next.pair);
            PowerSolveOutcome trial = evaluate_candidate(enlarged, scn);
            if (!trial.feasible) break;
            group = std::move(enlarged);
            current = std::move(trial);
            erase_pair(asg.denied, next.pair);
        }

        const PowerSolveOutcome final_powers = max_power_walk(group, scn, current);
        pw.p_c[cue] = final_powers.powers(0);
        for (std::size_t k = 0; k < group.pairs.size(); ++k) {
            pw.p_d[group.pairs[k]] = final_powers.powers(static_cast<Eigen::Index>(k + 1));
        }
        asg.per_rb[cue] = group.pairs;
    }

    counters.signaling_gains = ledger.count();
    return make_result(scn, policy.name, std::move(asg), std::move(pw), counters);
}

AllocationResult allocate(const Scenario& scn) {
    AdmissionPolicy policy;
    policy.name = "proposed";
    policy.first = select_first_pair;
    policy.next = select_next_pair;
    return run_admission(scn, policy);
}

}  // namespace d2d
