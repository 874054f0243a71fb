#include "sawom/grid.hpp"

#include <cmath>

#include "sawom/errors.hpp"

namespace sawom {

Grid2D::Grid2D(double extent, std::size_t points) : extent_(extent), points_(points) {
  if (!(extent > 0.0) || points < 2) throw ValidationError("grid: need extent > 0 and >= 2 points");
  spacing_ = extent / static_cast<double>(points - 1);
}

double Grid2D::coordinate(std::size_t i) const {
  const double half = static_cast<double>(points_ - 1) / 2.0;
  return (static_cast<double>(i) - half) * spacing_;
}

std::size_t Grid2D::nearest(double c) const {
  const double half = static_cast<double>(points_ - 1) / 2.0;
  const double pos = std::round(c / spacing_ + half);
  if (pos <= 0.0) return 0;
  if (pos >= static_cast<double>(points_ - 1)) return points_ - 1;
  return static_cast<std::size_t>(pos);
}

bool Grid2D::contains(double x, double z) const {
  const double lim = coordinate(points_ - 1);
  return std::fabs(x) <= lim && std::fabs(z) <= lim;
}

}  // namespace sawom
