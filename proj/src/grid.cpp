#include "cvsheet/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace cvsheet {

Grid::Grid(int n_points) : n_(n_points) {
  if (n_points < 8 || n_points % 2 != 0)
    throw std::invalid_argument("Grid: n_points must be even and >= 8, got " +
                                std::to_string(n_points));
}

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }

double Grid::node(int j) const { return 2.0 * std::numbers::pi * j / n_; }

}  // namespace cvsheet
