#include "d2d/counters.hpp"

#include <limits>
#include <stdexcept>

namespace d2d {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

u64 checked(i128 v) {
    if (v < 0 || v > static_cast<i128>(std::numeric_limits<u64>::max())) {
        throw std::overflow_error("predicted_counters: count out of 64-bit range");
    }
    return static_cast<u64>(v);
}

// Nearest integer to num / den (den > 0), halves away from zero.
i128 round_ratio(i128 num, i128 den) {
    const i128 mag = num < 0 ? -num : num;
    const i128 q = (2 * mag + den) / (2 * den);
    return num < 0 ? -q : q;
}

}  // namespace

EffortCounters predicted_counters(u64 n, u64 m, CounterVariant variant) {
    if (n == 0) throw std::invalid_argument("predicted_counters: need at least one CUE");
    if (m > 100000) throw std::overflow_error("predicted_counters: M too large");
    const i128 N = n;
    const i128 M = m;
    const i128 base = N * (M + 1) + 2 * M;

    EffortCounters c;
    if (variant == CounterVariant::Optimal) {
        if (m >= 64) throw std::overflow_error("predicted_counters: 2^M out of 64-bit range");
        c.matching_states = checked(N * (static_cast<i128>(1) << m));
        c.signaling_gains = full_csi_signaling(n, m);
    } else {
        c.matching_states = m;
        c.signaling_gains = checked(base + round_ratio(M * (M - N), N));
    }
    return c;
}

std::uint64_t full_csi_signaling(u64 n, u64 m) {
    if (m > 100000) throw std::overflow_error("full_csi_signaling: M too large");
    const i128 N = n;
    const i128 M = m;
    return checked(N * (M + 1) + 2 * M + M * (M - 1));
}

void SignalingLedger::charge(Link link, std::size_t i, std::size_t j) { charged_.emplace(link, i, j); }

void SignalingLedger::charge_all(std::size_t n_cues, std::size_t n_d2d) {
    for (std::size_t i = 0; i < n_cues; ++i) charge_cue(i);
    for (std::size_t j = 0; j < n_d2d; ++j) {
        charge(Link::D2dDesired, j, j);
        charge(Link::D2dToBs, j, j);
    }
    for (std::size_t i = 0; i < n_cues; ++i)
        for (std::size_t j = 0; j < n_d2d; ++j) charge(Link::CueToD2d, i, j);
    for (std::size_t i = 0; i < n_d2d; ++i)
        for (std::size_t j = 0; j < n_d2d; ++j)
            if (i != j) charge(Link::D2dToD2d, i, j);
}

}  // namespace d2d
