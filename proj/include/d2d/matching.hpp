#pragma once

#include <cstddef>
#include <vector>

namespace d2d {

/// Maximum-weight assignment of every row to a distinct column
/// (Kuhn-Munkres with potentials, O(rows^2 * cols)). Requires
/// rows <= cols and a rectangular matrix; returns the column of each row.
/// Throws std::invalid_argument on a malformed matrix.
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<double>>& weight);

}  // namespace d2d
