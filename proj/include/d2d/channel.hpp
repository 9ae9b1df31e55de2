#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "d2d/random.hpp"
#include "d2d/topology.hpp"

namespace d2d {

/// Linear power gains of every link in the cell.
struct GainTable {
    std::vector<double> g_cb;  // CUE i -> BS
    std::vector<double> g_d;   // D2D i tx -> its own rx
    std::vector<double> h_db;  // D2D i tx -> BS
    Eigen::MatrixXd h_cd;      // (CUE i, D2D j rx), N x M
    Eigen::MatrixXd h_dd;      // (D2D i tx, D2D j rx), M x M; diagonal is never read

    std::size_t n_cues() const { return g_cb.size(); }
    std::size_t n_d2d() const { return g_d.size(); }

    friend bool operator==(const GainTable& a, const GainTable& b) {
        return a.g_cb == b.g_cb && a.g_d == b.g_d && a.h_db == b.h_db &&
               a.h_cd.rows() == b.h_cd.rows() && a.h_cd.cols() == b.h_cd.cols() && a.h_cd == b.h_cd &&
               a.h_dd.rows() == b.h_dd.rows() && a.h_dd.cols() == b.h_dd.cols() && a.h_dd == b.h_dd;
    }
};

struct NoiseModel {
    double sigma_n2 = 0.0;  // AWGN, W
    double sigma_s2 = 0.0;  // receiver signal-processing noise, W

    double total() const { return sigma_n2 + sigma_s2; }
};

struct ChannelParams {
    double pathloss_exponent = 3.5;
    double shadowing_sigma_db = 8.0;  // log-normal shadowing std
    bool fading = true;                // Rayleigh block fading (unit-mean exponential power)
};

/// The three multiplicative factors of one link gain.
struct LinkGainDraw {
    double pathloss = 1.0;
    double shadowing = 1.0;
    double fading = 1.0;

    double gain() const { return pathloss * shadowing * fading; }
};

LinkGainDraw draw_link_gain(double distance_m, const ChannelParams& params, Rng& rng);

/// Draws every gain of the layout. Link order is fixed (g_cb, g_d, h_db, h_cd
/// row-major, h_dd row-major off-diagonal), so a seed reproduces the table
/// bit-exactly. Throws std::invalid_argument if pathloss_exponent <= 2.
GainTable compute_gains(const CellLayout& layout, const ChannelParams& params, std::uint64_t seed);

/// CSV dump: link_type,i,j,gain. Single-index links use j = i.
void write_gains_csv(const GainTable& gains, std::ostream& out);

}  // namespace d2d
