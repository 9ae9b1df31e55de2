#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "d2d/channel.hpp"
#include "d2d/format.hpp"
#include "d2d/random.hpp"
#include "d2d/topology.hpp"

using namespace d2d;

TEST_CASE("distance examples") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({0, 0}, {0, 0}) == kMinDistance);
    CHECK(distance({1, 1}, {1, 1 + kMinDistance / 2}) == kMinDistance);
}

TEST_CASE("distance is symmetric and obeys the triangle inequality") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
        Position a{uniform01(rng) * 200 - 100, uniform01(rng) * 200 - 100};
        Position b{uniform01(rng) * 200 - 100, uniform01(rng) * 200 - 100};
        Position c{uniform01(rng) * 200 - 100, uniform01(rng) * 200 - 100};
        CHECK(distance(a, b) == distance(b, a));
        // the clamp can add at most kMinDistance per leg
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + kMinDistance);
    }
}

TEST_CASE("disc sampling follows the area law") {
    Rng rng(3);
    const int samples = 20000;
    int inner = 0;
    for (int k = 0; k < samples; ++k) {
        const Position p = sample_in_disc({0, 0}, 100.0, rng);
        if (std::hypot(p.x, p.y) <= 50.0) ++inner;
    }
    CHECK(static_cast<double>(inner) / samples == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("generate_layout examples") {
    const CellLayout a = generate_layout(5, 25, 400, 10, 1);
    CHECK(a.n_cues() == 5);
    CHECK(a.n_d2d() == 25);
    CHECK(a.cluster_centers.size() == 25);
    for (const auto& c : a.cluster_centers) CHECK(std::hypot(c.x, c.y) <= 400.0);

    const CellLayout b = generate_layout(1, 0, 400, 10, 7);
    CHECK(b.n_cues() == 1);
    CHECK(b.d2d_tx_positions.empty());
    CHECK(b.d2d_rx_positions.empty());

    CHECK(generate_layout(5, 25, 400, 10, 1) == a);
}

TEST_CASE("layouts respect containment over a seed sweep") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const CellLayout l = generate_layout(5, 25, 400, 20, seed);
        CHECK(l.bs_position == Position{});
        for (const auto& p : l.cue_positions) CHECK(std::hypot(p.x, p.y) <= 400.0);
        for (std::size_t j = 0; j < l.n_d2d(); ++j) {
            const Position c = l.cluster_centers[j];
            CHECK(std::hypot(c.x, c.y) <= 400.0 - 20.0 + 1e-9);
            CHECK(std::hypot(l.d2d_tx_positions[j].x - c.x, l.d2d_tx_positions[j].y - c.y) <= 20.0 + 1e-9);
            CHECK(std::hypot(l.d2d_rx_positions[j].x - c.x, l.d2d_rx_positions[j].y - c.y) <= 20.0 + 1e-9);
        }
    }
}

TEST_CASE("generate_layout rejects bad parameters") {
    CHECK_THROWS_AS(generate_layout(0, 5, 400, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 5, 400, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 5, 10, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 5, -1, 10, 1), std::invalid_argument);
}

TEST_CASE("layout csv") {
    std::ostringstream out;
    write_layout_csv(generate_layout(1, 1, 400, 10, 1), out);
    const std::string s = out.str();
    CHECK(s.rfind("entity,index,x,y\r\n", 0) == 0);
    CHECK(s.find("d2d_rx,0,") != std::string::npos);
}

TEST_CASE("pathloss examples with fading off") {
    ChannelParams p{3.5, 0.0, false};
    Rng rng(1);
    CHECK(draw_link_gain(100.0, p, rng).gain() == doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(draw_link_gain(1.0, p, rng).gain() == 1.0);
    double prev = 2.0;
    for (double d = 1.0; d < 1000.0; d *= 1.3) {
        const double g = draw_link_gain(d, p, rng).gain();
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("fading has unit mean and shadowing has the configured spread") {
    ChannelParams p{3.5, 8.0, true};
    Rng rng(5);
    const int n = 100000;
    double fade_sum = 0.0;
    double log_sum = 0.0;
    double log_sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const LinkGainDraw d = draw_link_gain(50.0, p, rng);
        fade_sum += d.fading;
        const double l = std::log10(d.shadowing);
        log_sum += l;
        log_sq += l * l;
    }
    CHECK(fade_sum / n == doctest::Approx(1.0).epsilon(0.02));
    const double mean = log_sum / n;
    const double sd = std::sqrt(log_sq / n - mean * mean);
    CHECK(sd == doctest::Approx(0.8).epsilon(0.05));
}

TEST_CASE("compute_gains is reproducible and positive") {
    const CellLayout l = generate_layout(3, 6, 400, 10, 9);
    const GainTable a = compute_gains(l, {}, 42);
    CHECK(a == compute_gains(l, {}, 42));
    CHECK_FALSE(a == compute_gains(l, {}, 43));
    for (double g : a.g_cb) CHECK((g > 0 && std::isfinite(g)));
    CHECK((a.h_cd.array() > 0).all());
    CHECK(a.h_cd.rows() == 3);
    CHECK(a.h_dd.cols() == 6);
    CHECK_THROWS_AS(compute_gains(l, {2.0, 8.0, true}, 1), std::invalid_argument);
}

TEST_CASE("split_seed has no collisions over 1e6 indices") {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(1000000);
    for (std::uint64_t i = 0; i < 1000000; ++i) seeds.push_back(split_seed(1, i));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("unit conversions") {
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(-114.0) == doctest::Approx(3.981071705534972e-15));
    CHECK(watts_to_dbm(1e-3) == doctest::Approx(0.0));
    CHECK(std::isinf(watts_to_dbm(0.0)));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    CHECK(format_double(0.1) == "0.1");
}
