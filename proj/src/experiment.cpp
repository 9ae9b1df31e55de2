#include "d2d/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "d2d/random.hpp"

namespace d2d {

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) { return split_seed(master, trial); }

EffortCounters predicted_for(Algorithm algorithm, std::size_t n, std::size_t m) {
    switch (algorithm) {
        case Algorithm::Proposed: return predicted_counters(n, m, CounterVariant::Proposed);
        case Algorithm::AllCsi:
            // Reduced-complexity matching, full-CSI signaling.
            return {predicted_counters(n, m, CounterVariant::Proposed).matching_states, full_csi_signaling(n, m)};
        case Algorithm::ThreeStep: return {n * (m + 1), n * (m + 1) + 2 * m};
        case Algorithm::Exhaustive: return predicted_counters(n, m, CounterVariant::Optimal);
    }
    return {};
}

AllocationResult run_algorithm(Algorithm algorithm, const Scenario& scn, const ExperimentConfig& cfg,
                               const AllocationResult* proposed_hint) {
    switch (algorithm) {
        case Algorithm::Proposed: return allocate(scn);
        case Algorithm::ThreeStep: return three_step(scn);
        case Algorithm::AllCsi: return all_csi_greedy(scn, cfg.all_csi_scoring);
        case Algorithm::Exhaustive: {
            if (proposed_hint) return exhaustive(scn, *proposed_hint);
            return exhaustive(scn, allocate(scn));
        }
    }
    throw std::logic_error("run_algorithm: unhandled algorithm");
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t n_alg = cfg.algorithms.size();
    const std::size_t units = cfg.cluster_radius_sweep.size() * cfg.trials;
    std::vector<TrialRecord> records(units * n_alg);

    auto run_unit = [&](std::size_t unit) {
        const std::size_t sweep = unit / cfg.trials;
        const std::size_t trial = unit % cfg.trials;
        const double cluster_radius = cfg.cluster_radius_sweep[sweep];
        const std::uint64_t seed = trial_seed(cfg.seed, trial);
        const Scenario scn = build_scenario(cfg.scenario_params(cluster_radius), seed);

        std::optional<AllocationResult> proposed;
        for (std::size_t a = 0; a < n_alg; ++a) {
            const Algorithm alg = cfg.algorithms[a];
            const auto t0 = std::chrono::steady_clock::now();
            AllocationResult result;
            if (alg == Algorithm::Exhaustive) {
                if (!proposed) proposed = allocate(scn);
                result = exhaustive(scn, *proposed);
            } else {
                result = run_algorithm(alg, scn, cfg);
                if (alg == Algorithm::Proposed) proposed = result;
            }
            const auto t1 = std::chrono::steady_clock::now();

            TrialRecord& rec = records[unit * n_alg + a];
            rec.trial = trial;
            rec.seed = seed;
            rec.algorithm = alg;
            rec.n_cues = scn.n_cues();
            rec.n_d2d = scn.n_d2d();
            rec.cell_radius = cfg.cell_radius;
            rec.cluster_radius = cluster_radius;
            rec.sum_rate = result.sum_rate;
            rec.admitted = result.assignment.admitted_count();
            rec.counters = result.counters;
            rec.predicted = predicted_for(alg, scn.n_cues(), scn.n_d2d());
            rec.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
            if (cfg.keep_allocations) rec.allocation = std::move(result);
        }
    };

    std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, units);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t u = next++; u < units; u = next++) {
            try {
                run_unit(u);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = units;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

}  // namespace d2d
