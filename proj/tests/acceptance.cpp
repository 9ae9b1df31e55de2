// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "d2d/baselines.hpp"
#include "d2d/experiment.hpp"
#include "d2d/output.hpp"
#include "d2d/scenario.hpp"

using namespace d2d;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool relative_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

ExperimentConfig table_one(std::size_t trials) {
    ExperimentConfig cfg;
    cfg.n_cues = 5;
    cfg.cell_radius = 400.0;
    cfg.cluster_radius_sweep = {10.0};
    cfg.trials = trials;
    cfg.seed = 20240611;
    return cfg;
}

MeanCi stat(const std::vector<TrialRecord>& recs, Algorithm alg, bool admitted) {
    std::vector<double> v;
    for (const auto& r : recs)
        if (r.algorithm == alg) v.push_back(admitted ? static_cast<double>(r.admitted) : r.sum_rate);
    return mean_ci(v);
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

Outcome closed_form_consistency() {
    const auto t0 = Clock::now();
    ScenarioParams p;  // reference cell: N = 5, M = 25
    std::size_t instances = 0, feasible = 0;
    Outcome out;
    for (std::uint64_t s = 0; instances < 10000; ++s) {
        p.cell_radius = s % 2 ? 600.0 : 400.0;
        p.cluster_radius = 10.0 + 5.0 * static_cast<double>(s % 7);
        const Scenario scn = build_scenario(p, trial_seed(101, s));
        for (std::size_t i = 0; i < scn.n_cues() && instances < 10000; ++i) {
            for (std::size_t j = 0; j < scn.n_d2d() && instances < 10000; ++j, ++instances) {
                const auto cf = first_pair_powers(scn, i, j);
                const auto ls = min_power_solve(RbGroup{i, {j}}, scn);
                if (cf.feasible != ls.feasible) {
                    out = {false, "feasibility disagrees at instance " + std::to_string(instances)};
                    return out;
                }
                if (!cf.feasible) continue;
                ++feasible;
                if (!relative_close(cf.powers(0), ls.powers(0), 1e-9) || !relative_close(cf.powers(1), ls.powers(1), 1e-9)) {
                    return {false, "powers differ beyond 1e-9 at instance " + std::to_string(instances)};
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    out.detail = std::to_string(instances) + " instances (" + std::to_string(feasible) + " feasible), " + fmt(secs) + " s";
    if (secs >= 10.0) out = {false, out.detail + " exceeds 10 s"};
    return out;
}

Outcome feasibility_suite() {
    const auto t0 = Clock::now();
    ScenarioParams p;
    std::size_t checked = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
        p.cell_radius = s % 2 ? 600.0 : 400.0;
        p.cluster_radius = 10.0 + 5.0 * static_cast<double>((s / 2) % 7);
        const Scenario scn = build_scenario(p, trial_seed(202, s));
        const std::vector<AllocationResult> results{allocate(scn), three_step(scn), all_csi_greedy(scn),
                                                    all_csi_greedy(scn, AllCsiScoring::GainOnly)};
        for (const auto& r : results) {
            ++checked;
            if (auto err = r.assignment.structural_error(scn.n_d2d()); !err.empty()) {
                return {false, r.algorithm + " scenario " + std::to_string(s) + ": " + err};
            }
            const auto report = check_feasible(scn, r.assignment, r.powers);
            if (!report.feasible) {
                return {false, r.algorithm + " scenario " + std::to_string(s) + ": " +
                                   to_string(report.violations.front().kind) + " " + report.violations.front().detail};
            }
        }
    }
    const double secs = seconds_since(t0);
    Outcome out{true, std::to_string(checked) + " allocations clean, " + fmt(secs) + " s"};
    if (secs >= 120.0) out = {false, out.detail + " exceeds 2 min"};
    return out;
}

Outcome oracle_dominance() {
    const auto t0 = Clock::now();
    std::size_t trials = 0;
    double worst_gap = 0.0;
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 4}, {3, 6}}) {
        ScenarioParams p;
        p.n_cues = n;
        p.n_d2d = m;
        for (std::uint64_t s = 0; s < 100; ++s, ++trials) {
            const Scenario scn = build_scenario(p, trial_seed(303 + n, s));
            const auto proposed = allocate(scn);
            const auto single = three_step(scn);
            const auto best = exhaustive(scn, proposed);
            worst_gap = std::min({worst_gap, best.sum_rate - proposed.sum_rate, best.sum_rate - single.sum_rate});
            if (best.sum_rate < proposed.sum_rate - 1e-9 || best.sum_rate < single.sum_rate - 1e-9) {
                return {false, "N=" + std::to_string(n) + " seed index " + std::to_string(s) + ": exhaustive " +
                                   fmt(best.sum_rate) + " < proposed " + fmt(proposed.sum_rate) + " / three_step " +
                                   fmt(single.sum_rate)};
            }
        }
    }
    const double secs = seconds_since(t0);
    Outcome out{true, std::to_string(trials) + " trials, min margin " + fmt(worst_gap) + ", " + fmt(secs) + " s"};
    if (secs >= 600.0) out = {false, out.detail + " exceeds 10 min"};
    return out;
}

Outcome power_walk_properties() {
    const auto t0 = Clock::now();
    ScenarioParams p;
    Rng pick(909);
    std::size_t groups = 0, two_user = 0;
    double worst_ratio = 1.0;
    for (std::uint64_t s = 0; groups < 1000; ++s) {
        const Scenario scn = build_scenario(p, trial_seed(404, s));
        for (int attempt = 0; attempt < 20 && groups < 1000; ++attempt) {
            RbGroup g{static_cast<std::size_t>(pick() % scn.n_cues()), {}};
            const std::size_t k = 1 + static_cast<std::size_t>(pick() % 4);
            while (g.pairs.size() < k) {
                const std::size_t j = static_cast<std::size_t>(pick() % scn.n_d2d());
                if (std::find(g.pairs.begin(), g.pairs.end(), j) == g.pairs.end()) g.pairs.push_back(j);
            }
            const auto start = min_power_solve(g, scn);
            if (!start.feasible) continue;
            ++groups;
            const auto model = GroupModel::build(g, scn);
            const auto out = max_power_walk(g, scn, start);
            if ((out.powers - start.powers).minCoeff() < 0.0) return {false, "walk lowered a power"};
            if (!model.feasible(out.powers)) return {false, "walk output infeasible"};
            const double walk_rate = model.sum_rate(out.powers);
            if (walk_rate < model.sum_rate(start.powers)) return {false, "walk lowered the sum-rate"};
            if (g.pairs.size() != 1) continue;

            ++two_user;
            double grid_best = -1.0;
            Eigen::VectorXd q(2);
            for (int a = 0; a < 500; ++a) {
                q(0) = model.cap(0) * a / 499.0;
                for (int b = 0; b < 500; ++b) {
                    q(1) = model.cap(1) * b / 499.0;
                    if (!model.feasible(q)) continue;
                    grid_best = std::max(grid_best, model.sum_rate(q));
                }
            }
            if (grid_best > 0.0) worst_ratio = std::min(worst_ratio, walk_rate / grid_best);
        }
    }
    Outcome out{worst_ratio >= 0.98, std::to_string(groups) + " groups, " + std::to_string(two_user) +
                                           " two-user grid checks, worst walk/grid = " + fmt(worst_ratio) + ", " +
                                           fmt(seconds_since(t0)) + " s"};
    return out;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&failures](const std::string& id, const std::string& title, const Outcome& o) {
        std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << id << ' ' << title << " -- " << o.detail << std::endl;
        if (!o.passed) ++failures;
    };

    report("C1", "closed form vs linear solve", closed_form_consistency());
    report("C2", "feasibility suite", feasibility_suite());
    report("C3", "oracle dominance", oracle_dominance());

    // Criteria 4, 5, 8 and 10 share one run.
    const auto t4 = Clock::now();
    const ExperimentConfig base = table_one(200);
    const auto recs = run_experiment(base);
    const double secs4 = seconds_since(t4);
    {
        const auto pr = stat(recs, Algorithm::Proposed, false);
        const auto ts = stat(recs, Algorithm::ThreeStep, false);
        const auto pa = stat(recs, Algorithm::Proposed, true);
        const auto ta = stat(recs, Algorithm::ThreeStep, true);
        const bool ok = pr.mean > ts.mean && pr.low() > ts.high() && pa.mean >= 2.0 * ta.mean && secs4 < 300.0;
        report("C4", "multi-pair gain",
               {ok, "sum-rate proposed " + fmt(pr.mean) + " [" + fmt(pr.low()) + ", " + fmt(pr.high()) +
                        "] vs three_step " + fmt(ts.mean) + " [" + fmt(ts.low()) + ", " + fmt(ts.high()) +
                        "]; admitted " + fmt(pa.mean) + " vs " + fmt(ta.mean) + " (ratio " + fmt(pa.mean / ta.mean) +
                        "); " + fmt(secs4) + " s"});
    }
    {
        const auto pr = stat(recs, Algorithm::Proposed, false);
        const auto ac = stat(recs, Algorithm::AllCsi, false);
        report("C5", "AllCSI ordering",
               {ac.mean >= pr.mean * 0.99, "all_csi " + fmt(ac.mean) + " vs proposed " + fmt(pr.mean)});
    }
    {
        auto cfg = base;
        cfg.algorithms = {Algorithm::Proposed};
        const auto a400 = stat(run_experiment(cfg), Algorithm::Proposed, true);
        cfg.cell_radius = 600.0;
        const auto a600 = stat(run_experiment(cfg), Algorithm::Proposed, true);
        report("C6", "cell-radius trend",
               {a600.mean >= a400.mean, "admitted R=600 " + fmt(a600.mean) + " vs R=400 " + fmt(a400.mean)});
    }
    {
        auto cfg = base;
        cfg.algorithms = {Algorithm::Proposed};
        cfg.n_d2d = 25;
        const auto n5 = stat(run_experiment(cfg), Algorithm::Proposed, true);
        cfg.n_cues = 10;
        const auto n10 = stat(run_experiment(cfg), Algorithm::Proposed, true);
        report("C7", "CUE-count trend",
               {n10.mean >= n5.mean, "admitted N=10 " + fmt(n10.mean) + " vs N=5 " + fmt(n5.mean) + " (M=25)"});
    }
    {
        const auto opt = predicted_counters(5, 25, CounterVariant::Optimal);
        const auto pro = predicted_counters(5, 25, CounterVariant::Proposed);
        bool ok = opt.matching_states == 167772160 && opt.signaling_gains == 780 && pro.matching_states == 25 &&
                  pro.signaling_gains == 280;
        std::size_t compared = 0;
        for (std::size_t k = 0; k < recs.size(); ++k) {
            if (recs[k].algorithm != Algorithm::Proposed) continue;
            for (const auto& other : recs) {
                if (other.algorithm == Algorithm::AllCsi && other.trial == recs[k].trial) {
                    ++compared;
                    ok = ok && recs[k].counters.signaling_gains <= other.counters.signaling_gains;
                }
            }
        }
        report("C8", "counter formulas",
               {ok && compared == 200, "optimal " + std::to_string(opt.matching_states) + " states / " +
                                           std::to_string(opt.signaling_gains) + " gains, proposed " +
                                           std::to_string(pro.matching_states) + " / " +
                                           std::to_string(pro.signaling_gains) + "; tallies compared on " +
                                           std::to_string(compared) + " trials"});
    }
    report("C9", "power-walk properties", power_walk_properties());
    {
        auto cfg = base;
        cfg.threads = 3;
        std::ostringstream first, second;
        write_raw_csv(recs, first);
        write_raw_csv(run_experiment(cfg), second);
        report("C10", "determinism",
               {first.str() == second.str() && !first.str().empty(),
                std::to_string(first.str().size()) + " bytes, " + (first.str() == second.str() ? "identical" : "differ")});
    }

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
