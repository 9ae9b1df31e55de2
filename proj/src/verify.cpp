#include "d2d/verify.hpp"

#include <cmath>
#include <sstream>

#include "d2d/baselines.hpp"
#include "d2d/experiment.hpp"
#include "d2d/scenario.hpp"

namespace d2d {

namespace {

void fail(CheckResult& c, const std::string& why) {
    if (c.passed) c.detail = why;
    c.passed = false;
}

bool relative_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opt) {
    CheckResult closed{"closed_form_matches_linear_solve", true, 0, {}};
    CheckResult feasible{"all_algorithms_feasible", true, 0, {}};
    CheckResult dominance{"exhaustive_dominates", true, 0, {}};
    CheckResult walk{"power_walk_dominates_start", true, 0, {}};
    CheckResult counters{"counter_bounds", true, 0, {}};

    ScenarioParams params;
    params.n_cues = opt.n_cues;
    params.n_d2d = opt.n_d2d;
    params.cell_radius = opt.cell_radius;
    params.cluster_radius = opt.cluster_radius;
    const bool oracle_scale = opt.n_cues <= kExhaustiveMaxCues && opt.n_d2d <= kExhaustiveMaxPairs;

    for (std::size_t t = 0; t < opt.instances; ++t) {
        const std::uint64_t seed = trial_seed(opt.seed, t);
        const Scenario scn = build_scenario(params, seed);
        std::ostringstream where;
        where << "instance " << t << " (seed " << seed << ")";

        for (std::size_t i = 0; i < scn.n_cues(); ++i) {
            for (std::size_t j = 0; j < scn.n_d2d(); ++j) {
                ++closed.cases;
                const auto cf = first_pair_powers(scn, i, j);
                const auto ls = min_power_solve(RbGroup{i, {j}}, scn);
                if (cf.feasible != ls.feasible) {
                    fail(closed, where.str() + ": feasibility disagrees for cue " + std::to_string(i) +
                                     ", pair " + std::to_string(j));
                } else if (cf.feasible && !(relative_close(cf.powers(0), ls.powers(0), 1e-9) &&
                                            relative_close(cf.powers(1), ls.powers(1), 1e-9))) {
                    fail(closed, where.str() + ": powers disagree for cue " + std::to_string(i));
                }
            }
        }

        const AllocationResult proposed = allocate(scn);
        std::vector<AllocationResult> results{proposed, three_step(scn), all_csi_greedy(scn)};
        if (oracle_scale) results.push_back(exhaustive(scn, proposed));
        for (const auto& r : results) {
            ++feasible.cases;
            const auto report = check_feasible(scn, r.assignment, r.powers);
            if (!report.feasible) {
                fail(feasible, where.str() + ": " + r.algorithm + " violates " +
                                   to_string(report.violations.front().kind));
            }
        }
        if (oracle_scale) {
            ++dominance.cases;
            const double best = results[3].sum_rate;
            if (best < proposed.sum_rate - 1e-9 || best < results[1].sum_rate - 1e-9) {
                fail(dominance, where.str() + ": exhaustive below a heuristic");
            }
        }

        ++counters.cases;
        if (proposed.counters.matching_states > scn.n_d2d() + scn.n_cues()) {
            fail(counters, where.str() + ": proposed matching states exceed M + N");
        }
        if (proposed.counters.signaling_gains > results[2].counters.signaling_gains) {
            fail(counters, where.str() + ": proposed signaling exceeds full CSI");
        }
        if (results[2].counters.signaling_gains != full_csi_signaling(scn.n_cues(), scn.n_d2d())) {
            fail(counters, where.str() + ": full-CSI tally differs from its closed form");
        }
        if (results[1].assignment.admitted_count() > scn.n_cues()) {
            fail(counters, where.str() + ": three_step admitted more pairs than RBs");
        }

        // Every pair subset of each RB that admits a feasible min-power point.
        const std::size_t subsets = std::size_t{1} << std::min<std::size_t>(scn.n_d2d(), 10);
        for (std::size_t i = 0; i < scn.n_cues(); ++i) {
            for (std::size_t mask = 1; mask < subsets; ++mask) {
                RbGroup g{i, {}};
                for (std::size_t j = 0; j < scn.n_d2d() && j < 10; ++j)
                    if (mask & (std::size_t{1} << j)) g.pairs.push_back(j);
                const auto start = min_power_solve(g, scn);
                if (!start.feasible) continue;
                ++walk.cases;
                const auto out = max_power_walk(g, scn, start);
                const auto model = GroupModel::build(g, scn);
                if (!model.feasible(out.powers)) fail(walk, where.str() + ": walk left the feasible set");
                if ((out.powers - start.powers).minCoeff() < 0.0) fail(walk, where.str() + ": walk lowered a power");
                if (model.sum_rate(out.powers) < model.sum_rate(start.powers)) {
                    fail(walk, where.str() + ": walk lowered the sum-rate");
                }
            }
        }
    }
    return {closed, feasible, dominance, walk, counters};
}

}  // namespace d2d
