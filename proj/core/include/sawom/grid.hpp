#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sawom {

// Square lattice over (x, z), centred on the origin. Node i sits at
// (i - (points-1)/2) * spacing, so node points-1-i is the exact mirror of node i.
class Grid2D {
 public:
  Grid2D() = default;
  // extent is the full side length; spacing = extent / (points - 1).
  Grid2D(double extent, std::size_t points);

  [[nodiscard]] std::size_t points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_ * points_; }
  [[nodiscard]] double extent() const { return extent_; }
  [[nodiscard]] double spacing() const { return spacing_; }
  [[nodiscard]] double coordinate(std::size_t i) const;
  // Row-major: x index varies slowest.
  [[nodiscard]] std::size_t index(std::size_t ix, std::size_t iz) const { return ix * points_ + iz; }
  [[nodiscard]] std::size_t nearest(double coordinate) const;
  [[nodiscard]] bool contains(double x, double z) const;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  double extent_ = 0.0;
  std::size_t points_ = 0;
  double spacing_ = 0.0;
};

// Row-wise parallel loop. body(row) must only write state owned by that row;
// rows are partitioned statically so results never depend on thread count.
void parallel_rows(std::size_t rows, unsigned threads, const auto& body);

}  // namespace sawom

#include "sawom/detail/parallel.hpp"
