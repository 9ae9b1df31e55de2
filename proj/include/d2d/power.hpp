#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "d2d/radio.hpp"

namespace d2d {

/// One RB: its CUE plus the pairs sharing it, in admission order.
struct RbGroup {
    std::size_t cue = 0;
    std::vector<std::size_t> pairs;

    std::size_t size() const { return pairs.size() + 1; }
};

/// Linear model of an RB in local coordinates: user 0 is the CUE, user k >= 1
/// is pairs[k - 1]. Every QoS constraint
///     P_u * desired_u >= gamma_u * (sum_v cross(u, v) * P_v + noise)
/// is linear in the local power vector.
struct GroupModel {
    Eigen::VectorXd desired;
    Eigen::MatrixXd cross;  // cross(u, v): gain from transmitter v into receiver u; zero diagonal
    Eigen::VectorXd gamma;
    Eigen::VectorXd cap;
    double noise = 0.0;

    static GroupModel build(const RbGroup& group, const Scenario& scn);

    Eigen::Index size() const { return desired.size(); }

    /// F(u, v) = gamma_u * cross(u, v) / desired_u.
    Eigen::MatrixXd normalized_interference() const;
    /// gamma_u * noise / desired_u: the power each user needs with no interference.
    Eigen::VectorXd noise_floor_power() const;

    Eigen::VectorXd sinr(const Eigen::VectorXd& p) const;
    double sum_rate(const Eigen::VectorXd& p) const;
    /// QoS and caps within kFeasibilityTolerance, no negative power.
    bool feasible(const Eigen::VectorXd& p) const;
};

struct ActiveConstraint {
    enum class Kind { Qos, Cap };
    Kind kind = Kind::Qos;
    std::size_t user = 0;  // local index

    friend bool operator==(const ActiveConstraint&, const ActiveConstraint&) = default;
};

struct PowerSolveOutcome {
    bool feasible = false;
    Eigen::VectorXd powers;  // local: CUE first, then pairs in admission order
    std::vector<ActiveConstraint> active_constraints;
};

/// Constraints holding with equality (relative kFeasibilityTolerance) at p.
std::vector<ActiveConstraint> active_constraints(const GroupModel& model, const Eigen::VectorXd& p);

/// Closed-form minimum powers for a CUE and one pair, both SINRs at their
/// minimum. Infeasible when the shared denominator is non-positive or a cap
/// is exceeded.
PowerSolveOutcome first_pair_powers(const Scenario& scn, std::size_t cue, std::size_t pair);

/// The point where every QoS constraint of the group is equal-active, from one
/// dense solve of (I - F) p = noise_floor_power. Infeasible when the system is
/// singular (condition number above 1e12), the solution has a negative entry,
/// or a cap is exceeded.
PowerSolveOutcome min_power_solve(const RbGroup& group, const Scenario& scn);

/// Bookkeeping from one walk, for tests and diagnostics.
struct WalkTrace {
    std::size_t steps_taken = 0;
    std::size_t zero_steps = 0;
    std::size_t rejected_steps = 0;  // step would have lowered the sum-rate
};

/// Raises powers one user at a time (CUE, then pairs in admission order). Each
/// step moves the current user's power up while every other currently tight
/// constraint stays tight, and stops at the first new QoS equality or power
/// cap. `start` must be feasible; the result is feasible, componentwise >= start
/// and has sum-rate >= start's.
PowerSolveOutcome max_power_walk(const RbGroup& group, const Scenario& scn, const PowerSolveOutcome& start);
PowerSolveOutcome max_power_walk(const RbGroup& group, const Scenario& scn, const PowerSolveOutcome& start,
                                 WalkTrace& trace);

double spectral_radius(const RbGroup& group, const Scenario& scn);

/// True iff the normalized interference matrix has spectral radius below 1,
/// i.e. the all-equal-active system has a positive solution. Caps are not checked.
bool spectral_feasibility(const RbGroup& group, const Scenario& scn);

}  // namespace d2d
