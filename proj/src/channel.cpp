#include "d2d/channel.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "d2d/format.hpp"

namespace d2d {

LinkGainDraw draw_link_gain(double distance_m, const ChannelParams& params, Rng& rng) {
    LinkGainDraw draw;
    draw.pathloss = std::pow(distance_m, -params.pathloss_exponent);
    if (params.shadowing_sigma_db > 0.0) {
        draw.shadowing = std::pow(10.0, params.shadowing_sigma_db * standard_normal(rng) / 10.0);
    }
    if (params.fading) {
        // An exact zero would make the link gain non-positive.
        double f = 0.0;
        while (f <= 0.0) f = unit_exponential(rng);
        draw.fading = f;
    }
    return draw;
}

GainTable compute_gains(const CellLayout& layout, const ChannelParams& params, std::uint64_t seed) {
    if (!(params.pathloss_exponent > 2.0)) {
        throw std::invalid_argument("compute_gains: pathloss exponent must exceed 2");
    }
    if (params.shadowing_sigma_db < 0.0) {
        throw std::invalid_argument("compute_gains: shadowing sigma must be non-negative");
    }

    const std::size_t n = layout.n_cues();
    const std::size_t m = layout.n_d2d();
    const Position bs = layout.bs_position;
    Rng rng(seed);
    auto gain = [&](Position a, Position b) { return draw_link_gain(distance(a, b), params, rng).gain(); };

    GainTable t;
    t.g_cb.resize(n);
    t.g_d.resize(m);
    t.h_db.resize(m);
    t.h_cd.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    t.h_dd.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));

    for (std::size_t i = 0; i < n; ++i) t.g_cb[i] = gain(layout.cue_positions[i], bs);
    for (std::size_t j = 0; j < m; ++j) t.g_d[j] = gain(layout.d2d_tx_positions[j], layout.d2d_rx_positions[j]);
    for (std::size_t j = 0; j < m; ++j) t.h_db[j] = gain(layout.d2d_tx_positions[j], bs);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            t.h_cd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                gain(layout.cue_positions[i], layout.d2d_rx_positions[j]);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            if (i == j) {
                // Placeholder: pathloss only, no draw.
                t.h_dd(ii, jj) = std::pow(distance(layout.d2d_tx_positions[i], layout.d2d_rx_positions[i]),
                                          -params.pathloss_exponent);
            } else {
                t.h_dd(ii, jj) = gain(layout.d2d_tx_positions[i], layout.d2d_rx_positions[j]);
            }
        }
    }
    return t;
}

void write_gains_csv(const GainTable& gains, std::ostream& out) {
    out << "link_type,i,j,gain\r\n";
    auto row = [&out](const char* type, std::size_t i, std::size_t j, double g) {
        out << type << ',' << i << ',' << j << ',' << format_double(g) << "\r\n";
    };
    for (std::size_t i = 0; i < gains.n_cues(); ++i) row("g_cb", i, i, gains.g_cb[i]);
    for (std::size_t j = 0; j < gains.n_d2d(); ++j) row("g_d", j, j, gains.g_d[j]);
    for (std::size_t j = 0; j < gains.n_d2d(); ++j) row("h_db", j, j, gains.h_db[j]);
    for (Eigen::Index i = 0; i < gains.h_cd.rows(); ++i)
        for (Eigen::Index j = 0; j < gains.h_cd.cols(); ++j)
            row("h_cd", static_cast<std::size_t>(i), static_cast<std::size_t>(j), gains.h_cd(i, j));
    for (Eigen::Index i = 0; i < gains.h_dd.rows(); ++i)
        for (Eigen::Index j = 0; j < gains.h_dd.cols(); ++j)
            if (i != j) row("h_dd", static_cast<std::size_t>(i), static_cast<std::size_t>(j), gains.h_dd(i, j));
}

}  // namespace d2d
