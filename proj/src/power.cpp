#include "d2d/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace d2d {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kNegativeDirection = 1e-12;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

GroupModel GroupModel::build(const RbGroup& group, const Scenario& scn) {
    const Eigen::Index n = idx(group.size());
    const auto& g = scn.gains;
    GroupModel m;
    m.desired.resize(n);
    m.gamma.resize(n);
    m.cap.resize(n);
    m.cross = Eigen::MatrixXd::Zero(n, n);
    m.noise = scn.noise.total();

    m.desired(0) = g.g_cb[group.cue];
    m.gamma(0) = scn.qos.gamma_c_min[group.cue];
    m.cap(0) = scn.p_c_max;
    for (Eigen::Index k = 1; k < n; ++k) {
        const std::size_t j = group.pairs[static_cast<std::size_t>(k - 1)];
        m.desired(k) = g.g_d[j];
        m.gamma(k) = scn.qos.gamma_d_min[j];
        m.cap(k) = scn.p_d_max;
        m.cross(0, k) = g.h_db[j];
        m.cross(k, 0) = g.h_cd(idx(group.cue), idx(j));
        for (Eigen::Index l = 1; l < n; ++l) {
            if (l != k) m.cross(k, l) = g.h_dd(idx(group.pairs[static_cast<std::size_t>(l - 1)]), idx(j));
        }
    }
    return m;
}

Eigen::MatrixXd GroupModel::normalized_interference() const {
    return (gamma.cwiseQuotient(desired)).asDiagonal() * cross;
}

Eigen::VectorXd GroupModel::noise_floor_power() const {
    return gamma.cwiseQuotient(desired) * noise;
}

Eigen::VectorXd GroupModel::sinr(const Eigen::VectorXd& p) const {
    const Eigen::VectorXd interference = cross * p;
    Eigen::VectorXd out(size());
    for (Eigen::Index u = 0; u < size(); ++u) out(u) = p(u) * desired(u) / (interference(u) + noise);
    return out;
}

double GroupModel::sum_rate(const Eigen::VectorXd& p) const {
    const Eigen::VectorXd s = sinr(p);
    double total = 0.0;
    for (Eigen::Index u = 0; u < s.size(); ++u) total += std::log2(1.0 + s(u));
    return total;
}

bool GroupModel::feasible(const Eigen::VectorXd& p) const {
    if (p.size() != size()) return false;
    const Eigen::VectorXd s = sinr(p);
    for (Eigen::Index u = 0; u < size(); ++u) {
        if (!std::isfinite(p(u)) || p(u) < 0.0) return false;
        if (p(u) > cap(u) * (1.0 + kFeasibilityTolerance)) return false;
        if (s(u) < gamma(u) * (1.0 - kFeasibilityTolerance)) return false;
    }
    return true;
}

namespace {

// SINR_u / gamma_u - 1, computed in normalized form.
double qos_margin(const Eigen::MatrixXd& f, const Eigen::VectorXd& floor, const Eigen::VectorXd& p, Eigen::Index u) {
    const double required = f.row(u).dot(p) + floor(u);
    return p(u) / required - 1.0;
}

bool cap_tight(const GroupModel& m, const Eigen::VectorXd& p, Eigen::Index u) {
    return p(u) >= m.cap(u) * (1.0 - kFeasibilityTolerance);
}

}  // namespace

std::vector<ActiveConstraint> active_constraints(const GroupModel& model, const Eigen::VectorXd& p) {
    const Eigen::MatrixXd f = model.normalized_interference();
    const Eigen::VectorXd floor = model.noise_floor_power();
    std::vector<ActiveConstraint> out;
    for (Eigen::Index u = 0; u < model.size(); ++u) {
        if (std::abs(qos_margin(f, floor, p, u)) <= kFeasibilityTolerance) {
            out.push_back({ActiveConstraint::Kind::Qos, static_cast<std::size_t>(u)});
        }
        if (cap_tight(model, p, u)) out.push_back({ActiveConstraint::Kind::Cap, static_cast<std::size_t>(u)});
    }
    return out;
}

PowerSolveOutcome first_pair_powers(const Scenario& scn, std::size_t cue, std::size_t pair) {
    const auto& g = scn.gains;
    const double g_cb = g.g_cb[cue];
    const double g_d = g.g_d[pair];
    const double h_cd = g.h_cd(idx(cue), idx(pair));
    const double h_db = g.h_db[pair];
    const double gc = scn.qos.gamma_c_min[cue];
    const double gd = scn.qos.gamma_d_min[pair];
    const double noise = scn.noise.total();

    PowerSolveOutcome out;
    const double den = g_cb * g_d - gc * gd * h_cd * h_db;
    if (!(den > 0.0)) return out;

    out.powers.resize(2);
    out.powers(0) = (gc * gd * h_db + gc * g_d) * noise / den;
    out.powers(1) = (gc * gd * h_cd + gd * g_cb) * noise / den;
    out.feasible = out.powers(0) <= scn.p_c_max && out.powers(1) <= scn.p_d_max;
    if (out.feasible) {
        out.active_constraints = {{ActiveConstraint::Kind::Qos, 0}, {ActiveConstraint::Kind::Qos, 1}};
    }
    return out;
}

namespace {

// Osborne balancing: a diagonal scale s such that diag(s)^-1 * a * diag(s) has
// matching off-diagonal row and column magnitudes. Eigenvalues and the unit
// diagonal are unchanged; powers of very different magnitude otherwise make
// the condition estimate meaningless.
Eigen::VectorXd balancing_scale(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
    Eigen::MatrixXd b = a;
    for (int sweep = 0; sweep < 50; ++sweep) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double row = b.row(i).cwiseAbs().sum() - std::abs(b(i, i));
            const double col = b.col(i).cwiseAbs().sum() - std::abs(b(i, i));
            if (!(row > 0.0) || !(col > 0.0)) continue;
            const double f = std::sqrt(col / row);
            if (std::abs(f - 1.0) < 1e-3) continue;
            changed = true;
            b.row(i) *= f;
            b.col(i) /= f;
            scale(i) /= f;
        }
        if (!changed) break;
    }
    return scale;
}

}  // namespace

PowerSolveOutcome min_power_solve(const RbGroup& group, const Scenario& scn) {
    const GroupModel model = GroupModel::build(group, scn);
    const Eigen::Index n = model.size();
    PowerSolveOutcome out;

    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - model.normalized_interference();
    const Eigen::VectorXd s = balancing_scale(a);
    const Eigen::MatrixXd balanced = s.cwiseInverse().asDiagonal() * a * s.asDiagonal();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(balanced);
    if (!(lu.rcond() * kMaxCondition >= 1.0)) return out;

    out.powers = s.cwiseProduct(lu.solve(s.cwiseInverse().cwiseProduct(model.noise_floor_power())));
    for (Eigen::Index u = 0; u < n; ++u) {
        if (!std::isfinite(out.powers(u)) || out.powers(u) < 0.0) return out;
    }
    for (Eigen::Index u = 0; u < n; ++u) {
        if (out.powers(u) > model.cap(u)) return out;
    }
    out.feasible = true;
    out.active_constraints = active_constraints(model, out.powers);
    return out;
}

namespace {

struct Row {
    Eigen::RowVectorXd coeffs;
    Eigen::Index owner;
};

// Direction with unit coefficient on `user` lying in the null space of `rows`.
// Only `user` and the rows' owners may move. Empty optional when the rows pin
// the user's coordinate or admit no unique direction. The solve runs in
// coordinates relative to the current (strictly positive) powers `p`.
std::optional<Eigen::VectorXd> walk_direction(const std::vector<Row>& rows, Eigen::Index user,
                                              const Eigen::VectorXd& p) {
    const Eigen::Index n = p.size();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    d(user) = 1.0;
    if (rows.empty()) return d;

    std::vector<Eigen::Index> owners;
    for (const auto& r : rows) {
        if (r.owner == user) return std::nullopt;
        if (std::find(owners.begin(), owners.end(), r.owner) == owners.end()) owners.push_back(r.owner);
    }
    std::sort(owners.begin(), owners.end());

    const auto t = static_cast<Eigen::Index>(rows.size());
    const auto k = static_cast<Eigen::Index>(owners.size());
    Eigen::MatrixXd lhs(t, k);
    Eigen::VectorXd rhs(t);
    for (Eigen::Index r = 0; r < t; ++r) {
        const Eigen::RowVectorXd row = rows[static_cast<std::size_t>(r)].coeffs.cwiseProduct(p.transpose());
        const double norm = row.cwiseAbs().maxCoeff();
        for (Eigen::Index c = 0; c < k; ++c) lhs(r, c) = row(owners[static_cast<std::size_t>(c)]) / norm;
        rhs(r) = -row(user) / norm;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(lhs);
    qr.setThreshold(1.0 / kMaxCondition);
    if (qr.rank() < k) return std::nullopt;
    const Eigen::VectorXd x = qr.solve(rhs);
    const double residual = (lhs * x - rhs).norm();
    if (!(residual <= kFeasibilityTolerance * (1.0 + rhs.norm() + lhs.norm() * x.norm()))) return std::nullopt;

    // x holds relative moves per unit relative move of `user`.
    for (Eigen::Index c = 0; c < k; ++c) {
        const Eigen::Index o = owners[static_cast<std::size_t>(c)];
        d(o) = x(c) * p(o) / p(user);
    }
    return d;
}

}  // namespace

PowerSolveOutcome max_power_walk(const RbGroup& group, const Scenario& scn, const PowerSolveOutcome& start) {
    WalkTrace trace;
    return max_power_walk(group, scn, start, trace);
}

PowerSolveOutcome max_power_walk(const RbGroup& group, const Scenario& scn, const PowerSolveOutcome& start,
                                 WalkTrace& trace) {
    const GroupModel model = GroupModel::build(group, scn);
    const Eigen::Index n = model.size();
    if (!start.feasible || start.powers.size() != n || !model.feasible(start.powers)) return start;

    const Eigen::MatrixXd f = model.normalized_interference();
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - f;
    const Eigen::VectorXd floor = model.noise_floor_power();

    Eigen::VectorXd p = start.powers;
    double rate = model.sum_rate(p);

    for (Eigen::Index u = 0; u < n; ++u) {
        if (cap_tight(model, p, u)) {
            ++trace.zero_steps;
            continue;
        }

        // Constraints to preserve: every other tight QoS row and every tight cap.
        std::vector<Row> rows;
        std::vector<bool> qos_held(static_cast<std::size_t>(n), false);
        for (Eigen::Index v = 0; v < n; ++v) {
            if (v == u) continue;
            if (cap_tight(model, p, v)) {
                Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
                e(v) = 1.0;
                rows.push_back({e, v});
            }
            if (std::abs(qos_margin(f, floor, p, v)) <= kFeasibilityTolerance) {
                rows.push_back({a.row(v), v});
                qos_held[static_cast<std::size_t>(v)] = true;
            }
        }

        auto dir = walk_direction(rows, u, p);
        if (!dir || dir->minCoeff() < -kNegativeDirection) {
            ++trace.zero_steps;
            continue;
        }
        Eigen::VectorXd d = dir->cwiseMax(0.0);

        // Exact line search against every constraint not held.
        double step = std::numeric_limits<double>::infinity();
        Eigen::Index blocking_cap = -1;
        for (Eigen::Index v = 0; v < n; ++v) {
            if (d(v) > 0.0) {
                const double s = (model.cap(v) - p(v)) / d(v);
                if (s < step) {
                    step = s;
                    blocking_cap = v;
                }
            }
        }
        for (Eigen::Index w = 0; w < n; ++w) {
            if (qos_held[static_cast<std::size_t>(w)]) continue;
            const double drift = a.row(w).dot(d);
            if (drift < 0.0) {
                const double slack = std::max(0.0, a.row(w).dot(p) - floor(w));
                const double s = slack / -drift;
                if (s < step) {
                    step = s;
                    blocking_cap = -1;
                }
            }
        }
        if (!(step > 0.0) || !std::isfinite(step)) {
            ++trace.zero_steps;
            continue;
        }

        Eigen::VectorXd next = p + step * d;
        if (blocking_cap >= 0) next(blocking_cap) = model.cap(blocking_cap);
        next = next.cwiseMin(model.cap);

        const double next_rate = model.sum_rate(next);
        if (!model.feasible(next) || next_rate < rate) {
            ++trace.rejected_steps;
            continue;
        }
        p = next;
        rate = next_rate;
        ++trace.steps_taken;
    }

    PowerSolveOutcome out;
    out.feasible = true;
    out.powers = p;
    out.active_constraints = active_constraints(model, p);
    return out;
}

double spectral_radius(const RbGroup& group, const Scenario& scn) {
    const GroupModel model = GroupModel::build(group, scn);
    if (model.size() == 1) return 0.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> es(model.normalized_interference(), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool spectral_feasibility(const RbGroup& group, const Scenario& scn) {
    return spectral_radius(group, scn) < 1.0;
}

}  // namespace d2d
