#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "d2d/allocation.hpp"
#include "d2d/config.hpp"
#include "d2d/counters.hpp"

namespace d2d {

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;  // per-trial seed, shared by every algorithm and sweep point
    Algorithm algorithm = Algorithm::Proposed;
    std::size_t n_cues = 0;
    std::size_t n_d2d = 0;
    double cell_radius = 0.0;
    double cluster_radius = 0.0;
    double sum_rate = 0.0;  // bits/s/Hz
    std::size_t admitted = 0;
    EffortCounters counters;
    EffortCounters predicted;
    double wall_seconds = 0.0;
    std::optional<AllocationResult> allocation;  // kept only with keep_allocations
};

/// Per-trial seed: split_seed(master, trial). Sweep points reuse it, so
/// cluster radii are compared on common random numbers.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

/// Closed-form counts reported next to each algorithm's tallies.
EffortCounters predicted_for(Algorithm algorithm, std::size_t n, std::size_t m);

AllocationResult run_algorithm(Algorithm algorithm, const Scenario& scn, const ExperimentConfig& cfg,
                               const AllocationResult* proposed_hint = nullptr);

/// Runs every (cluster radius, trial) unit on a worker pool. Records are
/// ordered by cluster radius (sweep order), trial, then algorithm (config
/// order) regardless of scheduling. Throws ConfigError before any trial runs.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

}  // namespace d2d
