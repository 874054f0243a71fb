#include "artifacts.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <sstream>

#include <openssl/evp.h>

#include "sawom/errors.hpp"
#include "sawom/format.hpp"

namespace sawom::cli {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw ComputationError("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

namespace {

std::array<int, 3> rgb(std::string_view hex) {
  return {std::stoi(std::string(hex.substr(1, 2)), nullptr, 16), std::stoi(std::string(hex.substr(3, 2)), nullptr, 16),
          std::stoi(std::string(hex.substr(5, 2)), nullptr, 16)};
}

std::string ramp_colour(double t) {
  constexpr std::size_t stops = std::size(kRamp);
  t = std::clamp(t, 0.0, 1.0) * static_cast<double>(stops - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(t), stops - 2);
  const double f = t - static_cast<double>(i);
  const auto a = rgb(kRamp[i]);
  const auto b = rgb(kRamp[i + 1]);
  char buf[8];
  std::array<int, 3> c{};
  for (int k = 0; k < 3; ++k) c[k] = static_cast<int>(std::lround(a[k] + f * (b[k] - a[k])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

// Largest stride keeping <= max_cells samples per side; prefers strides that
// land on the last node so the raster stays mirror-symmetric.
std::size_t raster_stride(std::size_t points, std::size_t max_cells) {
  const std::size_t minimum = std::max<std::size_t>(1, (points - 1 + max_cells - 2) / (max_cells - 1));
  for (std::size_t s = minimum; s < minimum * 4; ++s) {
    if ((points - 1) % s == 0) return s;
  }
  return minimum;
}

std::string um(double metres) { return fmt::fixed(metres * 1e6, 1); }

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string heatmap_svg(const Field2D& field, const HeatmapStyle& style) {
  const Grid2D& grid = field.grid;
  const std::size_t stride = raster_stride(grid.points(), std::max<std::size_t>(style.max_cells, 2));
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < grid.points(); i += stride) nodes.push_back(i);
  const std::size_t cells = nodes.size();

  const auto [lo_it, hi_it] = std::minmax_element(field.values.begin(), field.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double span = hi > lo ? hi - lo : 1.0;

  constexpr int cell = 3;
  constexpr int margin = 40;
  const int side = static_cast<int>(cells) * cell;
  const int width = side + 2 * margin + 170;
  const int height = side + 2 * margin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<title>" << style.title << "</title>\n";
  out << "<style>text{font-family:sans-serif;font-size:11px}</style>\n";
  out << "<text x=\"" << margin << "\" y=\"20\">" << style.title << "</text>\n";
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = 0; b < cells; ++b) {
      const double v = field.at(nodes[a], nodes[b]);
      const int px = margin + static_cast<int>(a) * cell;
      const int py = margin + static_cast<int>(cells - 1 - b) * cell;
      out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"" << ramp_colour((v - lo) / span) << "\"/>\n";
    }
  }
  out << "</g>\n";
  const double half = grid.extent() / 2.0;
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 15 << "\">x: " << um(-half) << " to " << um(half)
      << " um</text>\n";
  out << "<text x=\"" << margin - 5 << "\" y=\"" << margin + side << "\" transform=\"rotate(-90 " << margin - 5
      << ' ' << margin + side << ")\">z: " << um(-half) << " to " << um(half) << " um</text>\n";

  // Legend: ramp bar with min and max labels.
  const int lx = margin + side + 15;
  out << "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
  for (std::size_t i = 0; i < std::size(kRamp); ++i) {
    out << "<stop offset=\"" << fmt::fixed(static_cast<double>(i) / (std::size(kRamp) - 1), 2)
        << "\" stop-color=\"" << kRamp[i] << "\"/>";
  }
  out << "</linearGradient></defs>\n";
  out << "<rect x=\"" << lx << "\" y=\"" << margin << "\" width=\"12\" height=\"" << side
      << "\" fill=\"url(#ramp)\"/>\n";
  out << "<text x=\"" << lx << "\" y=\"" << margin - 5 << "\">max " << fmt::shortest(hi) << ' ' << style.unit
      << "</text>\n";
  out << "<text x=\"" << lx << "\" y=\"" << margin + side + 14 << "\">min " << fmt::shortest(lo) << ' '
      << style.unit << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string line_plot_svg(const std::vector<double>& x, const std::vector<Series>& series, std::string_view title,
                          std::string_view x_label) {
  static constexpr std::string_view colours[] = {"#1f4e9c", "#c0392b", "#2e8b57", "#7d3c98"};
  constexpr int w = 640, h = 400, m = 50;
  double ylo = 0.0, yhi = 0.0;
  bool first = true;
  for (const auto& s : series) {
    for (double v : s.y) {
      if (first) {
        ylo = yhi = v;
        first = false;
      }
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  }
  const double xlo = x.front(), xhi = x.back();
  const double xs = xhi > xlo ? xhi - xlo : 1.0;
  const double ys = yhi > ylo ? yhi - ylo : 1.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
      << w << ' ' << h << "\">\n";
  out << "<title>" << title << "</title>\n";
  out << "<style>text{font-family:sans-serif;font-size:11px}</style>\n";
  out << "<text x=\"" << m << "\" y=\"20\">" << title << "</text>\n";
  out << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << w - 2 * m << "\" height=\"" << h - 2 * m
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << colours[k % std::size(colours)] << "\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double px = m + (x[i] - xlo) / xs * (w - 2 * m);
      const double py = h - m - (series[k].y[i] - ylo) / ys * (h - 2 * m);
      out << (i ? " " : "") << fmt::fixed(px, 2) << ',' << fmt::fixed(py, 2);
    }
    out << "\"/>\n";
    out << "<text x=\"" << w - m - 120 << "\" y=\"" << m + 15 + 14 * static_cast<int>(k) << "\" fill=\""
        << colours[k % std::size(colours)] << "\">" << series[k].label << "</text>\n";
  }
  out << "<text x=\"" << m << "\" y=\"" << h - m + 15 << "\">" << tick(xlo) << "</text>\n";
  out << "<text x=\"" << w - m - 60 << "\" y=\"" << h - m + 15 << "\">" << tick(xhi) << "</text>\n";
  out << "<text x=\"" << w / 2 - 30 << "\" y=\"" << h - m + 30 << "\">" << x_label << "</text>\n";
  out << "<text x=\"2\" y=\"" << m + 4 << "\">" << tick(yhi) << "</text>\n";
  out << "<text x=\"2\" y=\"" << h - m << "\">" << tick(ylo) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string field_csv(const Grid2D& grid, const std::vector<std::string>& headers,
                      const std::vector<const std::vector<double>*>& columns) {
  std::string out = "x_m,z_m";
  for (const auto& h : headers) out += "," + h;
  out += '\n';
  const std::size_t n = grid.points();
  out.reserve(grid.size() * (24 + 24 * columns.size()));
  std::vector<std::string> coord(n);
  for (std::size_t i = 0; i < n; ++i) coord[i] = fmt::shortest(grid.coordinate(i));
  for (std::size_t ix = 0; ix < n; ++ix) {
    for (std::size_t iz = 0; iz < n; ++iz) {
      out += coord[ix];
      out += ',';
      out += coord[iz];
      for (const auto* c : columns) {
        out += ',';
        out += fmt::shortest((*c)[grid.index(ix, iz)]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string table_csv(const std::vector<std::string>& headers, const std::vector<std::vector<double>>& columns) {
  std::string out;
  for (std::size_t k = 0; k < headers.size(); ++k) out += (k ? "," : "") + headers[k];
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) out += ',';
      out += fmt::shortest(columns[k][i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sawom::cli
