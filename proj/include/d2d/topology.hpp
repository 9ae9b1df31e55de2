#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "d2d/random.hpp"

namespace d2d {

/// Lower clamp on every distance fed to the pathloss model, in meters.
inline constexpr double kMinDistance = 1.0;

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Euclidean distance, clamped below by kMinDistance.
double distance(Position a, Position b);

/// One cell realization. The BS sits at the origin.
struct CellLayout {
    double cell_radius = 0.0;
    Position bs_position{};
    std::vector<Position> cue_positions;
    std::vector<Position> d2d_tx_positions;
    std::vector<Position> d2d_rx_positions;
    std::vector<Position> cluster_centers;
    double cluster_radius = 0.0;

    std::size_t n_cues() const { return cue_positions.size(); }
    std::size_t n_d2d() const { return d2d_tx_positions.size(); }

    friend bool operator==(const CellLayout&, const CellLayout&) = default;
};

/// Area-uniform point in the disc of `radius` around `center` (radius * sqrt(u) law).
Position sample_in_disc(Position center, double radius, Rng& rng);

/// CUEs uniform in the cell disc; each D2D pair gets its own cluster whose
/// center is uniform in the disc of radius (cell_radius - cluster_radius), and
/// tx/rx are uniform within the cluster. Throws std::invalid_argument unless
/// n_cues >= 1 and cell_radius > cluster_radius > 0.
CellLayout generate_layout(std::size_t n_cues, std::size_t n_d2d, double cell_radius,
                           double cluster_radius, std::uint64_t seed);

/// Flat CSV dump: entity,index,x,y with entity in {bs,cue,d2d_tx,d2d_rx,cluster}.
void write_layout_csv(const CellLayout& layout, std::ostream& out);

}  // namespace d2d
