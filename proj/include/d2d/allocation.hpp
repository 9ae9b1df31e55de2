#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "d2d/counters.hpp"
#include "d2d/power.hpp"
#include "d2d/radio.hpp"

namespace d2d {

struct AllocationResult {
    std::string algorithm;
    Assignment assignment;
    PowerVector powers;
    std::vector<double> sinr_c;
    std::vector<double> sinr_d;  // zero for denied pairs
    std::vector<double> rate_c;  // bits/s/Hz
    std::vector<double> rate_d;
    double sum_rate = 0.0;
    EffortCounters counters;
};

/// Fills in SINRs, rates and the sum-rate for a finished assignment.
AllocationResult make_result(const Scenario& scn, std::string algorithm, Assignment asg, PowerVector pw,
                             EffortCounters counters);

/// CUE indices by non-increasing distance from the BS; ties by ascending index.
struct CuePriority {
    std::vector<std::size_t> order;
};

CuePriority cue_priority(const Scenario& scn);

struct CandidateScore {
    enum class Kind { FirstPair, Subsequent };
    std::size_t pair = 0;
    double score = 0.0;
    Kind kind = Kind::FirstPair;
};

/// Denied pair whose receiver is farthest from the CUE (ties: lowest index).
/// Throws std::invalid_argument if `denied` is empty.
CandidateScore select_first_pair(const Scenario& scn, std::size_t cue, const std::vector<std::size_t>& denied);

/// Max-min power-normalized distance: for each denied pair, the smallest
/// distance/power ratio from any transmitter already in the RB to its
/// receiver; the pair with the largest such value wins (ties: lowest index).
/// Transmitters at zero power are skipped. Throws std::invalid_argument if
/// `denied` is empty.
CandidateScore select_next_pair(const Scenario& scn, const RbGroup& group, const PowerSolveOutcome& powers,
                                const std::vector<std::size_t>& denied);

/// Hooks that distinguish greedy admission variants sharing the same skeleton.
struct AdmissionPolicy {
    std::string name;
    std::function<CandidateScore(const Scenario&, std::size_t cue, const std::vector<std::size_t>& denied)> first;
    std::function<CandidateScore(const Scenario&, const RbGroup&, const PowerSolveOutcome&,
                                 const std::vector<std::size_t>& denied)>
        next;
    /// Charge every gain of the cell up front instead of per candidate.
    bool full_csi = false;
};

/// Per-RB greedy admission: CUEs in priority order, a first pair tested with
/// the closed form, further pairs admitted while the min-power solve stays
/// feasible, and a power walk to finish each RB.
AllocationResult run_admission(const Scenario& scn, const AdmissionPolicy& policy);

/// The proposed distance/power-metric allocation.
AllocationResult allocate(const Scenario& scn);

}  // namespace d2d
