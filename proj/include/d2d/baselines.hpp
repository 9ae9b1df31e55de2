#pragma once

#include <cstddef>

#include "d2d/allocation.hpp"

namespace d2d {

/// At most one pair per RB. Every (CUE, pair) combination gets the closed-form
/// minimum powers followed by the two-user power walk; the per-RB rate gains
/// over the CUE-alone rate are then matched by maximum-weight bipartite matching.
AllocationResult three_step(const Scenario& scn);

enum class AllCsiScoring {
    ReceivedPower,  // max over in-RB transmitters of P_u * h(u -> candidate rx)
    GainOnly,       // max over in-RB transmitters of h(u -> candidate rx)
};

/// Same skeleton as allocate(), but the next pair is the one that would see
/// the least interference from the RB's transmitters, computed from full CSI.
/// The first pair of an RB is scored with the CUE at its power cap.
AllocationResult all_csi_greedy(const Scenario& scn, AllCsiScoring scoring = AllCsiScoring::ReceivedPower);

inline constexpr std::size_t kExhaustiveMaxCues = 3;
inline constexpr std::size_t kExhaustiveMaxPairs = 8;

/// Enumerates all (N+1)^M pair-to-RB mappings. Each RB is powered by the
/// min-power solve (pairs in ascending index order) followed by the power
/// walk; mappings with an infeasible RB are skipped. `hint` is evaluated as
/// one more candidate, so the result never falls below it. Throws
/// std::length_error beyond kExhaustiveMaxCues / kExhaustiveMaxPairs.
AllocationResult exhaustive(const Scenario& scn, const AllocationResult& hint);

}  // namespace d2d
