#include "d2d/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "d2d/matching.hpp"

namespace d2d {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double cue_alone_rate(const Scenario& scn, std::size_t cue) {
    return std::log2(1.0 + scn.p_c_max * scn.gains.g_cb[cue] / scn.noise.total());
}

struct RbEvaluation {
    double rate = 0.0;
    Eigen::VectorXd powers;
};

}  // namespace

AllocationResult three_step(const Scenario& scn) {
    const std::size_t n = scn.n_cues();
    const std::size_t m = scn.n_d2d();
    EffortCounters counters;
    SignalingLedger ledger;

    // Columns: M pairs, then N "no pair" columns of weight zero.
    constexpr double forbidden = -1e300;
    std::vector<std::vector<double>> weight(n, std::vector<double>(m + n, forbidden));
    std::vector<std::vector<std::optional<RbEvaluation>>> evals(n, std::vector<std::optional<RbEvaluation>>(m));
    for (std::size_t i = 0; i < n; ++i) {
        ledger.charge_cue(i);
        for (std::size_t c = 0; c < n; ++c) weight[i][m + c] = 0.0;
        const double alone = cue_alone_rate(scn, i);
        ++counters.matching_states;
        for (std::size_t j = 0; j < m; ++j) {
            ledger.charge_candidate(i, j, std::vector<std::size_t>{});
            ++counters.matching_states;
            const PowerSolveOutcome start = first_pair_powers(scn, i, j);
            if (!start.feasible) continue;
            const RbGroup group{i, {j}};
            const PowerSolveOutcome walked = max_power_walk(group, scn, start);
            const double rate = GroupModel::build(group, scn).sum_rate(walked.powers);
            evals[i][j] = RbEvaluation{rate, walked.powers};
            weight[i][j] = rate - alone;
        }
    }

    Assignment asg = Assignment::all_denied(n, m);
    PowerVector pw{std::vector<double>(n, scn.p_c_max), std::vector<double>(m, 0.0)};
    if (m > 0) {
        const auto match = max_weight_assignment(weight);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = match[i];
            if (j >= m || !evals[i][j] || !(weight[i][j] > 0.0)) continue;
            asg.per_rb[i] = {j};
            pw.p_c[i] = evals[i][j]->powers(0);
            pw.p_d[j] = evals[i][j]->powers(1);
            asg.denied.erase(std::find(asg.denied.begin(), asg.denied.end(), j));
        }
    }
    counters.signaling_gains = ledger.count();
    return make_result(scn, "three_step", std::move(asg), std::move(pw), counters);
}

AllocationResult all_csi_greedy(const Scenario& scn, AllCsiScoring scoring) {
    const bool weighted = scoring == AllCsiScoring::ReceivedPower;
    AdmissionPolicy policy;
    policy.name = weighted ? "all_csi" : "all_csi_gain";
    policy.full_csi = true;
    policy.first = [weighted](const Scenario& s, std::size_t cue, const std::vector<std::size_t>& denied) {
        if (denied.empty()) throw std::invalid_argument("all_csi_greedy: no denied pairs");
        const double p = weighted ? s.p_c_max : 1.0;
        CandidateScore best{denied.front(), std::numeric_limits<double>::infinity(), CandidateScore::Kind::FirstPair};
        for (std::size_t j : denied) {
            const double score = p * s.gains.h_cd(idx(cue), idx(j));
            if (score < best.score) best = {j, score, CandidateScore::Kind::FirstPair};
        }
        return best;
    };
    policy.next = [weighted](const Scenario& s, const RbGroup& group, const PowerSolveOutcome& powers,
                             const std::vector<std::size_t>& denied) {
        if (denied.empty()) throw std::invalid_argument("all_csi_greedy: no denied pairs");
        CandidateScore best{denied.front(), std::numeric_limits<double>::infinity(), CandidateScore::Kind::Subsequent};
        for (std::size_t j : denied) {
            double score = (weighted ? powers.powers(0) : 1.0) * s.gains.h_cd(idx(group.cue), idx(j));
            for (std::size_t k = 0; k < group.pairs.size(); ++k) {
                const double p = weighted ? powers.powers(idx(k + 1)) : 1.0;
                score = std::max(score, p * s.gains.h_dd(idx(group.pairs[k]), idx(j)));
            }
            if (score < best.score) best = {j, score, CandidateScore::Kind::Subsequent};
        }
        return best;
    };
    return run_admission(scn, policy);
}

AllocationResult exhaustive(const Scenario& scn, const AllocationResult& hint) {
    const std::size_t n = scn.n_cues();
    const std::size_t m = scn.n_d2d();
    if (n > kExhaustiveMaxCues || m > kExhaustiveMaxPairs) {
        throw std::length_error("exhaustive: instance beyond scale guard (N <= " + std::to_string(kExhaustiveMaxCues) +
                                ", M <= " + std::to_string(kExhaustiveMaxPairs) + ")");
    }

    // Per-RB outcomes depend only on (cue, pair subset); memoize them.
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<std::vector<std::optional<std::optional<RbEvaluation>>>> memo(
        n, std::vector<std::optional<std::optional<RbEvaluation>>>(subsets));
    auto rb_eval = [&](std::size_t cue, std::size_t mask) -> const std::optional<RbEvaluation>& {
        auto& slot = memo[cue][mask];
        if (slot) return *slot;
        if (mask == 0) {
            Eigen::VectorXd p(1);
            p(0) = scn.p_c_max;
            slot = std::optional<RbEvaluation>(RbEvaluation{cue_alone_rate(scn, cue), p});
            return *slot;
        }
        RbGroup group{cue, {}};
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::size_t{1} << j)) group.pairs.push_back(j);
        std::optional<RbEvaluation> result;
        if (spectral_feasibility(group, scn)) {
            const PowerSolveOutcome start = min_power_solve(group, scn);
            if (start.feasible) {
                const PowerSolveOutcome walked = max_power_walk(group, scn, start);
                result = RbEvaluation{GroupModel::build(group, scn).sum_rate(walked.powers), walked.powers};
            }
        }
        slot = std::move(result);
        return *slot;
    };

    EffortCounters counters;
    SignalingLedger ledger;
    ledger.charge_all(n, m);

    std::vector<std::size_t> digits(m, n);  // digit n means denied
    std::vector<std::size_t> masks(n);
    std::vector<std::size_t> best_masks(n, 0);
    double best_rate = -std::numeric_limits<double>::infinity();
    while (true) {
        ++counters.matching_states;
        std::fill(masks.begin(), masks.end(), 0);
        for (std::size_t j = 0; j < m; ++j)
            if (digits[j] < n) masks[digits[j]] |= std::size_t{1} << j;
        double total = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const auto& e = rb_eval(i, masks[i]);
            if (e) total += e->rate;
            else ok = false;
        }
        if (ok && total > best_rate) {
            best_rate = total;
            best_masks = masks;
        }

        // Odometer increment in base n + 1.
        std::size_t pos = 0;
        while (pos < m) {
            digits[pos] = digits[pos] == n ? 0 : digits[pos] + 1;
            if (digits[pos] != n) break;
            ++pos;
        }
        if (pos == m) break;
    }

    Assignment asg = Assignment::all_denied(n, m);
    PowerVector pw{std::vector<double>(n, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = *rb_eval(i, best_masks[i]);
        pw.p_c[i] = e.powers(0);
        Eigen::Index k = 1;
        for (std::size_t j = 0; j < m; ++j) {
            if (!(best_masks[i] & (std::size_t{1} << j))) continue;
            asg.per_rb[i].push_back(j);
            pw.p_d[j] = e.powers(k++);
        }
    }
    asg.denied.clear();
    for (std::size_t j = 0; j < m; ++j)
        if (!asg.rb_of(j)) asg.denied.push_back(j);

    ++counters.matching_states;
    counters.signaling_gains = ledger.count();
    AllocationResult best = make_result(scn, "exhaustive", std::move(asg), std::move(pw), counters);
    if (hint.sum_rate > best.sum_rate && check_feasible(scn, hint.assignment, hint.powers).feasible) {
        best = make_result(scn, "exhaustive", hint.assignment, hint.powers, counters);
    }
    return best;
}

}  // namespace d2d
