#pragma once

#include <cstdint>
#include <set>
#include <tuple>

namespace d2d {

/// Matching-complexity and signaling tallies.
struct EffortCounters {
    std::uint64_t matching_states = 0;
    std::uint64_t signaling_gains = 0;

    friend bool operator==(const EffortCounters&, const EffortCounters&) = default;
};

enum class CounterVariant { Optimal, Proposed };

/// Closed-form counts. Optimal: N * 2^M states and N(M+1) + 2M + M(M-1) gains.
/// Proposed: M states and N(M+1) + 2M + M(M/N - 1) gains, the last term
/// evaluated as the exact rational M(M-N)/N and rounded half away from zero.
/// Throws std::invalid_argument for n == 0 and std::overflow_error when a
/// count does not fit in 64 bits.
EffortCounters predicted_counters(std::uint64_t n, std::uint64_t m, CounterVariant variant);

/// N(M+1) + 2M + M(M-1): every gain of the cell.
std::uint64_t full_csi_signaling(std::uint64_t n, std::uint64_t m);

/// Distinct channel gains conveyed to the BS. Charging a gain twice counts once.
class SignalingLedger {
public:
    enum class Link : std::uint8_t { CueToBs, D2dDesired, D2dToBs, CueToD2d, D2dToD2d };

    void charge(Link link, std::size_t i, std::size_t j);
    void charge_cue(std::size_t cue) { charge(Link::CueToBs, cue, cue); }
    /// Gains a pair's admission test needs against the CUE and the pairs already in the RB.
    template <typename Range>
    void charge_candidate(std::size_t cue, std::size_t pair, const Range& in_rb) {
        charge(Link::D2dDesired, pair, pair);
        charge(Link::D2dToBs, pair, pair);
        charge(Link::CueToD2d, cue, pair);
        for (std::size_t k : in_rb) {
            if (k == pair) continue;
            charge(Link::D2dToD2d, k, pair);
            charge(Link::D2dToD2d, pair, k);
        }
    }
    /// Every gain of the cell: N + NM + 2M + M(M-1) entries.
    void charge_all(std::size_t n_cues, std::size_t n_d2d);

    std::uint64_t count() const { return charged_.size(); }

private:
    std::set<std::tuple<Link, std::size_t, std::size_t>> charged_;
};

}  // namespace d2d
