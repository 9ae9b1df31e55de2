#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace d2d {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;  // first failure, if any
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t instances = 50;
    std::size_t n_cues = 2;
    std::size_t n_d2d = 4;
    double cell_radius = 400.0;
    double cluster_radius = 10.0;
};

/// Structural and numerical invariants on small seeded instances: closed form
/// vs linear solve, feasibility of every algorithm, exhaustive dominance,
/// power-walk dominance, counter bounds.
std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options);

}  // namespace d2d
