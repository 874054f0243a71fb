#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sawom/acoustics.hpp"

namespace sawom::cli {

struct Artifact {
  std::string name;  // relative to the output directory
  std::string content;
};

std::string sha256_hex(std::string_view bytes);

// Colour ramp stops, low to high.
inline constexpr std::string_view kRamp[] = {"#0d0887", "#6a00a8", "#b12a90", "#e16462", "#fca636", "#f0f921"};

struct HeatmapStyle {
  std::string title;
  std::string unit;
  std::size_t max_cells = 200;  // per side
};

// Decimated raster with a min/max legend. x runs left to right, z bottom to top.
std::string heatmap_svg(const Field2D& field, const HeatmapStyle& style);

struct Series {
  std::string label;
  std::vector<double> y;
};

std::string line_plot_svg(const std::vector<double>& x, const std::vector<Series>& series, std::string_view title,
                          std::string_view x_label);

// One row per grid node: x_m,z_m,<columns...>.
std::string field_csv(const Grid2D& grid, const std::vector<std::string>& headers,
                      const std::vector<const std::vector<double>*>& columns);

// Column table with a header row.
std::string table_csv(const std::vector<std::string>& headers, const std::vector<std::vector<double>>& columns);

}  // namespace sawom::cli
