#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "d2d/channel.hpp"
#include "d2d/topology.hpp"

namespace d2d {

/// Relative tolerance used when deciding whether a QoS or cap constraint holds.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Reuse indicator: per_rb[i] lists the pairs sharing CUE i's RB, in admission order.
struct Assignment {
    std::vector<std::vector<std::size_t>> per_rb;
    std::vector<std::size_t> denied;  // ascending

    /// All pairs denied, every RB carries only its CUE.
    static Assignment all_denied(std::size_t n_cues, std::size_t n_d2d);

    /// RB (CUE index) that pair j reuses, if any.
    std::optional<std::size_t> rb_of(std::size_t pair) const;
    std::size_t admitted_count() const;

    /// Empty string when the structural invariants hold (each pair in at most
    /// one RB, no duplicates, denied is exactly the complement), else a reason.
    std::string structural_error(std::size_t n_d2d) const;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct PowerVector {
    std::vector<double> p_c;
    std::vector<double> p_d;

    friend bool operator==(const PowerVector&, const PowerVector&) = default;
};

struct QosProfile {
    std::vector<double> gamma_c_min;  // linear
    std::vector<double> gamma_d_min;  // linear
};

struct Scenario {
    CellLayout layout;
    GainTable gains;
    NoiseModel noise;
    QosProfile qos;
    double p_c_max = 0.0;      // W
    double p_d_max = 0.0;      // W
    double rb_bandwidth = 0.0; // Hz, reporting only

    std::size_t n_cues() const { return gains.n_cues(); }
    std::size_t n_d2d() const { return gains.n_d2d(); }

    /// Throws std::invalid_argument on inconsistent dimensions or bad values.
    void validate() const;
};

double sinr_cue(const Scenario& scn, const Assignment& asg, const PowerVector& pw, std::size_t cue);

/// Zero for a denied pair.
double sinr_d2d(const Scenario& scn, const Assignment& asg, const PowerVector& pw, std::size_t pair);

/// Sum of log2(1 + SINR) over all CUEs and admitted pairs, bits/s/Hz.
double sum_rate(const Scenario& scn, const Assignment& asg, const PowerVector& pw);

struct Violation {
    enum class Kind { Structure, CueQos, D2dQos, CueCap, D2dCap, NegativePower, DeniedPower };
    Kind kind;
    std::size_t index = 0;
    double value = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // signed distance to the bound; negative when violated
    std::string detail;
};

std::string to_string(Violation::Kind kind);

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;
};

/// Checks every QoS, power-bound, and reuse constraint at kFeasibilityTolerance.
FeasibilityReport check_feasible(const Scenario& scn, const Assignment& asg, const PowerVector& pw);

}  // namespace d2d
