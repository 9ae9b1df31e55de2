#include "d2d/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "d2d/format.hpp"

namespace d2d {

double distance(Position a, Position b) {
    return std::max(std::hypot(a.x - b.x, a.y - b.y), kMinDistance);
}

Position sample_in_disc(Position center, double radius, Rng& rng) {
    const double r = radius * std::sqrt(uniform01(rng));
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

CellLayout generate_layout(std::size_t n_cues, std::size_t n_d2d, double cell_radius,
                           double cluster_radius, std::uint64_t seed) {
    if (n_cues == 0) throw std::invalid_argument("generate_layout: need at least one CUE");
    if (!(cluster_radius > 0.0) || !(cell_radius > cluster_radius) || !std::isfinite(cell_radius)) {
        throw std::invalid_argument("generate_layout: require cell_radius > cluster_radius > 0 (got " +
                                    format_double(cell_radius) + ", " + format_double(cluster_radius) + ")");
    }

    Rng rng(seed);
    CellLayout layout;
    layout.cell_radius = cell_radius;
    layout.cluster_radius = cluster_radius;

    layout.cue_positions.reserve(n_cues);
    for (std::size_t i = 0; i < n_cues; ++i) {
        layout.cue_positions.push_back(sample_in_disc(layout.bs_position, cell_radius, rng));
    }

    layout.cluster_centers.reserve(n_d2d);
    layout.d2d_tx_positions.reserve(n_d2d);
    layout.d2d_rx_positions.reserve(n_d2d);
    for (std::size_t j = 0; j < n_d2d; ++j) {
        const Position c = sample_in_disc(layout.bs_position, cell_radius - cluster_radius, rng);
        layout.cluster_centers.push_back(c);
        layout.d2d_tx_positions.push_back(sample_in_disc(c, cluster_radius, rng));
        layout.d2d_rx_positions.push_back(sample_in_disc(c, cluster_radius, rng));
    }
    return layout;
}

void write_layout_csv(const CellLayout& layout, std::ostream& out) {
    out << "entity,index,x,y\r\n";
    auto row = [&out](const char* entity, std::size_t i, Position p) {
        out << entity << ',' << i << ',' << format_double(p.x) << ',' << format_double(p.y) << "\r\n";
    };
    row("bs", 0, layout.bs_position);
    for (std::size_t i = 0; i < layout.cue_positions.size(); ++i) row("cue", i, layout.cue_positions[i]);
    for (std::size_t j = 0; j < layout.n_d2d(); ++j) {
        row("cluster", j, layout.cluster_centers[j]);
        row("d2d_tx", j, layout.d2d_tx_positions[j]);
        row("d2d_rx", j, layout.d2d_rx_positions[j]);
    }
}

}  // namespace d2d
