#pragma once

#include <cstddef>

#include "d2d/radio.hpp"

namespace d2d::test {

// Hand-built scenario with unit gains, no cross-interference and QoS 1 everywhere.
// Tests overwrite the fields they care about.
inline Scenario blank_scenario(std::size_t n, std::size_t m) {
    Scenario scn;
    scn.layout.cell_radius = 1000.0;
    scn.layout.cluster_radius = 10.0;
    scn.layout.cue_positions.assign(n, Position{});
    scn.layout.d2d_tx_positions.assign(m, Position{});
    scn.layout.d2d_rx_positions.assign(m, Position{});
    scn.layout.cluster_centers.assign(m, Position{});
    scn.gains.g_cb.assign(n, 1.0);
    scn.gains.g_d.assign(m, 1.0);
    scn.gains.h_db.assign(m, 0.0);
    scn.gains.h_cd = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    scn.gains.h_dd = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    scn.noise = {0.1, 0.0};
    scn.qos.gamma_c_min.assign(n, 1.0);
    scn.qos.gamma_d_min.assign(m, 1.0);
    scn.p_c_max = 1.0;
    scn.p_d_max = 1.0;
    scn.rb_bandwidth = 1e6;
    return scn;
}

}  // namespace d2d::test
