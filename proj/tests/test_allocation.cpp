#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "d2d/allocation.hpp"
#include "d2d/baselines.hpp"
#include "d2d/matching.hpp"
#include "d2d/random.hpp"
#include "d2d/scenario.hpp"
#include "fixtures.hpp"

using namespace d2d;
using d2d::test::blank_scenario;

TEST_CASE("cue_priority orders by distance from the BS") {
    Scenario s = blank_scenario(3, 0);
    s.layout.cue_positions = {{100, 0}, {0, 300}, {-200, 0}};
    CHECK(cue_priority(s).order == std::vector<std::size_t>{1, 2, 0});

    CHECK(cue_priority(blank_scenario(1, 0)).order == std::vector<std::size_t>{0});

    Scenario tie = blank_scenario(2, 0);
    tie.layout.cue_positions = {{0, 150}, {150, 0}};
    CHECK(cue_priority(tie).order == std::vector<std::size_t>{0, 1});
}

TEST_CASE("select_first_pair picks the farthest receiver") {
    Scenario s = blank_scenario(1, 3);
    s.layout.d2d_rx_positions = {{50, 0}, {0, 120}, {-80, 0}};
    CHECK(select_first_pair(s, 0, {0, 1, 2}).pair == 1);
    CHECK(select_first_pair(s, 0, {2}).pair == 2);
    s.layout.d2d_rx_positions = {{50, 0}, {0, 50}, {-80, 0}};
    CHECK(select_first_pair(s, 0, {0, 1}).pair == 0);
    CHECK_THROWS_AS(select_first_pair(s, 0, {}), std::invalid_argument);
}

TEST_CASE("select_next_pair maximizes the min distance/power ratio") {
    Scenario s = blank_scenario(1, 3);
    s.layout.d2d_tx_positions[0] = {100, 50};
    // candidate A: 100 m from the CUE, 50 m from pair 0's transmitter
    s.layout.d2d_rx_positions[1] = {100, 0};
    // candidate B: 150 m from the CUE, 200 m from pair 0's transmitter
    const double bx = -20.0 + std::sqrt(4400.0);
    s.layout.d2d_rx_positions[2] = {bx, -50.0 - 2.0 * bx};
    REQUIRE(distance({0, 0}, s.layout.d2d_rx_positions[2]) == doctest::Approx(150.0));
    REQUIRE(distance({100, 50}, s.layout.d2d_rx_positions[2]) == doctest::Approx(200.0));

    PowerSolveOutcome pw;
    pw.feasible = true;
    pw.powers = Eigen::Vector2d(1.0, 0.1);
    const CandidateScore c = select_next_pair(s, {0, {0}}, pw, {1, 2});
    CHECK(c.pair == 2);
    CHECK(c.score == doctest::Approx(150.0));

    // single in-RB transmitter
    PowerSolveOutcome cue_only;
    cue_only.powers = Eigen::Vector2d(1.0, 0.0);
    s.layout.d2d_rx_positions[1] = {100, 0};
    s.layout.d2d_rx_positions[2] = {200, 0};
    CHECK(select_next_pair(s, {0, {0}}, cue_only, {1, 2}).pair == 2);

    s.layout.d2d_rx_positions[2] = {0, 100};
    s.layout.d2d_tx_positions[0] = {0, 0};
    CHECK(select_next_pair(s, {0, {0}}, pw, {1, 2}).pair == 1);
    CHECK_THROWS_AS(select_next_pair(s, {0, {0}}, pw, {}), std::invalid_argument);
}

TEST_CASE("allocate with no pairs leaves every CUE alone at full power") {
    Scenario s = blank_scenario(3, 0);
    s.gains.g_cb = {0.5, 1.0, 2.0};
    const AllocationResult r = allocate(s);
    double expected = 0.0;
    for (double g : s.gains.g_cb) expected += std::log2(1.0 + s.p_c_max * g / s.noise.total());
    CHECK(r.sum_rate == doctest::Approx(expected));
    CHECK(r.powers.p_c == std::vector<double>(3, s.p_c_max));
    CHECK(r.assignment.admitted_count() == 0);
    CHECK(three_step(s).sum_rate == doctest::Approx(expected));
    CHECK(exhaustive(s, r).sum_rate == doctest::Approx(expected));
}

TEST_CASE("allocate admits a benign pair and raises it above the closed-form point") {
    Scenario s = blank_scenario(1, 1);
    s.gains.h_cd(0, 0) = 0.01;
    s.gains.h_db[0] = 0.01;
    s.layout.d2d_rx_positions[0] = {300, 0};
    const PowerSolveOutcome eq9 = first_pair_powers(s, 0, 0);
    REQUIRE(eq9.feasible);
    const AllocationResult r = allocate(s);
    REQUIRE(r.assignment.rb_of(0) == std::optional<std::size_t>{0});
    CHECK(r.powers.p_c[0] >= eq9.powers(0));
    CHECK(r.powers.p_d[0] >= eq9.powers(1));
    CHECK(check_feasible(s, r.assignment, r.powers).feasible);
}

TEST_CASE("a pair rejected at one RB stays eligible for later RBs") {
    Scenario s = blank_scenario(2, 1);
    s.layout.cue_positions = {{300, 0}, {100, 0}};
    s.gains.h_cd(0, 0) = 50.0;  // CUE 0 swamps the receiver
    s.gains.h_db[0] = 0.01;
    s.gains.h_cd(1, 0) = 0.01;
    REQUIRE(cue_priority(s).order.front() == 0);
    const AllocationResult r = allocate(s);
    CHECK(r.assignment.rb_of(0) == std::optional<std::size_t>{1});
    CHECK(r.powers.p_c[0] == s.p_c_max);
}

TEST_CASE("allocation invariants on reference scenarios") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Scenario s = build_scenario({}, seed);
        const AllocationResult r = allocate(s);
        CHECK(check_feasible(s, r.assignment, r.powers).feasible);
        CHECK(r.assignment.structural_error(s.n_d2d()).empty());
        // one state per candidate evaluation, hence one min-power solve per state
        CHECK(r.counters.matching_states <= s.n_d2d() + s.n_cues());
        const AllocationResult again = allocate(s);
        CHECK(again.assignment == r.assignment);
        CHECK(again.powers == r.powers);
        CHECK(again.sum_rate == r.sum_rate);

        const AllocationResult all = all_csi_greedy(s);
        CHECK(check_feasible(s, all.assignment, all.powers).feasible);
        CHECK(r.counters.signaling_gains <= all.counters.signaling_gains);
        CHECK(all.counters.signaling_gains == full_csi_signaling(s.n_cues(), s.n_d2d()));

        const AllocationResult ts = three_step(s);
        CHECK(check_feasible(s, ts.assignment, ts.powers).feasible);
        CHECK(ts.assignment.admitted_count() <= s.n_cues());
    }
}

TEST_CASE("Hungarian matching agrees with brute force") {
    Rng rng(8);
    for (int k = 0; k < 200; ++k) {
        const std::size_t rows = 1 + rng() % 4;
        const std::size_t cols = rows + rng() % 3;
        std::vector<std::vector<double>> w(rows, std::vector<double>(cols));
        for (auto& row : w) for (double& v : row) v = uniform01(rng) * 10 - 3;
        const std::vector<std::size_t> got = max_weight_assignment(w);
        double got_total = 0.0;
        for (std::size_t r = 0; r < rows; ++r) got_total += w[r][got[r]];

        std::vector<std::size_t> perm(cols);
        std::iota(perm.begin(), perm.end(), 0);
        double best = -1e300;
        do {
            double t = 0.0;
            for (std::size_t r = 0; r < rows; ++r) t += w[r][perm[r]];
            best = std::max(best, t);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(got_total == doctest::Approx(best).epsilon(1e-12));
    }
    CHECK_THROWS_AS(max_weight_assignment({{1.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("three_step admits the feasible pair") {
    Scenario s = blank_scenario(1, 2);
    s.gains.h_cd << 50.0, 0.01;
    s.gains.h_db = {0.01, 0.01};
    const AllocationResult r = three_step(s);
    CHECK(r.assignment.per_rb[0] == std::vector<std::size_t>{1});
    CHECK(r.assignment.denied == std::vector<std::size_t>{0});
}

TEST_CASE("all_csi picks the candidate with the least interference") {
    Scenario s = blank_scenario(1, 2);
    s.gains.h_cd << 1e-7, 1e-9;
    const AllocationResult r = all_csi_greedy(s);
    REQUIRE_FALSE(r.assignment.per_rb[0].empty());
    CHECK(r.assignment.per_rb[0].front() == 1);

    Scenario sym = blank_scenario(1, 2);
    sym.gains.h_cd << 1e-8, 1e-8;
    CHECK(all_csi_greedy(sym).assignment.per_rb[0].front() == 0);
    CHECK(all_csi_greedy(sym, AllCsiScoring::GainOnly).algorithm == "all_csi_gain");
}

TEST_CASE("exhaustive on one CUE and one pair is the better of deny and admit") {
    Scenario s = blank_scenario(1, 1);
    s.gains.h_cd(0, 0) = 0.2;
    s.gains.h_db[0] = 0.3;
    const double deny = std::log2(1.0 + s.p_c_max * s.gains.g_cb[0] / s.noise.total());
    const RbGroup g{0, {0}};
    const PowerSolveOutcome walked = max_power_walk(g, s, first_pair_powers(s, 0, 0));
    const double admit = GroupModel::build(g, s).sum_rate(walked.powers);
    const AllocationResult hint = make_result(s, "none", Assignment::all_denied(1, 1), {{s.p_c_max}, {0.0}}, {});
    CHECK(exhaustive(s, hint).sum_rate == doctest::Approx(std::max(deny, admit)));
}

TEST_CASE("exhaustive scale guard") {
    const Scenario big_n = blank_scenario(4, 1);
    CHECK_THROWS_AS(exhaustive(big_n, allocate(big_n)), std::length_error);
    const Scenario big_m = blank_scenario(1, 9);
    CHECK_THROWS_AS(exhaustive(big_m, allocate(big_m)), std::length_error);
}

TEST_CASE("exhaustive dominates proposed and three_step at oracle scale") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Scenario s = build_scenario(ScenarioParams{2, 4}, seed);
        const AllocationResult p = allocate(s);
        const AllocationResult e = exhaustive(s, p);
        CHECK(e.sum_rate >= p.sum_rate - 1e-9);
        CHECK(e.sum_rate >= three_step(s).sum_rate - 1e-9);
        CHECK(check_feasible(s, e.assignment, e.powers).feasible);
    }
}
