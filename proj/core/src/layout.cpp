#include "sawom/layout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/format.hpp"

namespace sawom {

std::string_view to_string(RingRole role) {
  switch (role) {
    case RingRole::IdtPortA:
      return "idt_a";
    case RingRole::IdtPortB:
      return "idt_b";
    case RingRole::Mirror:
      return "mirror";
  }
  return "mirror";
}

ResonatorGeometry generate_focusing_circuit(const MaterialProperties& material,
                                            const LayoutSpec& spec) {
  if (!(spec.lambda_saw > 0.0)) throw ValidationError("invalid wavelength");
  if (spec.idt_pairs < 1 || spec.mirror_pairs < 1) {
    throw ValidationError("layout: idt_pairs and mirror_pairs must be >= 1");
  }
  if (spec.samples_per_contour < 64) {
    throw ValidationError("layout: samples_per_contour must be >= 64");
  }
  if (!(spec.inner_clear_radius >= 0.0)) {
    throw ValidationError("layout: inner_clear_radius must be non-negative");
  }

  ResonatorGeometry g;
  g.lambda_saw = spec.lambda_saw;
  g.electrode_width = spec.lambda_saw / 4.0;
  g.electrode_gap = spec.lambda_saw / 4.0;
  g.idt_pairs = spec.idt_pairs;
  g.mirror_pairs = spec.mirror_pairs;

  const std::size_t idt_electrodes = 2 * spec.idt_pairs;
  const std::size_t electrodes = idt_electrodes + spec.mirror_pairs;
  const std::size_t n_samples = spec.samples_per_contour;

  std::vector<double> thetas(n_samples);
  std::vector<double> shapes(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    thetas[k] = constants::two_pi * static_cast<double>(k) / static_cast<double>(n_samples);
    shapes[k] = material.anisotropy.shape(thetas[k]);
  }

  g.contours.resize(2 * electrodes);
  for (std::size_t n = 0; n < g.contours.size(); ++n) {
    const std::size_t electrode = n / 2;
    Contour& c = g.contours[n];
    c.ring = n;
    if (electrode < idt_electrodes) {
      c.role = electrode % 2 == 0 ? RingRole::IdtPortA : RingRole::IdtPortB;
    } else {
      c.role = RingRole::Mirror;
    }
    c.samples.resize(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
      const double local_lambda = spec.lambda_saw * shapes[k];
      const double r = (spec.inner_clear_radius + static_cast<double>(n) * local_lambda / 4.0) * shapes[k];
      c.samples[k] = {thetas[k], r};
    }
  }

  validate_geometry(g);

  double sum = 0.0;
  for (const auto& s : g.contours.back().samples) sum += s.r;
  g.r_eff = sum / static_cast<double>(n_samples);
  return g;
}

void validate_geometry(const ResonatorGeometry& g) {
  for (std::size_t n = 0; n < g.contours.size(); ++n) {
    const auto& samples = g.contours[n].samples;
    // A polar curve with r > 0 and strictly increasing theta over one turn
    // cannot cross itself.
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const bool bad_r = !(samples[k].r > 0.0) || !std::isfinite(samples[k].r);
      const bool bad_theta = k > 0 && !(samples[k].theta > samples[k - 1].theta);
      if (bad_r || bad_theta) {
        throw ComputationError("contour collision: ring " + std::to_string(n) +
                               " is not a simple closed curve");
      }
    }
    if (!samples.empty() && samples.back().theta - samples.front().theta >= constants::two_pi) {
      throw ComputationError("contour collision: ring " + std::to_string(n) +
                             " wraps more than one turn");
    }
    if (n == 0) continue;
    const auto& inner = g.contours[n - 1].samples;
    if (inner.size() != samples.size()) {
      throw ComputationError("contour collision: ring " + std::to_string(n) +
                             " sampled differently from ring " + std::to_string(n - 1));
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
      if (!(samples[k].r > inner[k].r)) {
        throw ComputationError("contour collision: ring " + std::to_string(n) +
                               " touches ring " + std::to_string(n - 1));
      }
    }
  }
}

namespace {

std::string to_svg(const ResonatorGeometry& g) {
  constexpr double kUnitsPerMetre = 1e6;  // 1 SVG unit = 1 um
  double extent = 0.0;
  for (const auto& c : g.contours) {
    for (const auto& s : c.samples) extent = std::max(extent, s.r);
  }
  extent *= kUnitsPerMetre;
  const std::string lo = fmt::fixed(-extent, 3);
  const std::string side = fmt::fixed(2.0 * extent, 3);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << lo << ' ' << lo
      << ' ' << side << ' ' << side << "\" width=\"" << side << "\" height=\"" << side << "\">\n"
      << "<style>\n"
      << "  path { fill: none; stroke-width: 0.5; }\n"
      << "  .idt_a { stroke: #2ca02c; }\n"
      << "  .idt_b { stroke: #98df8a; }\n"
      << "  .mirror { stroke: #1f77b4; }\n"
      << "</style>\n";
  for (const auto& c : g.contours) {
    out << "<path class=\"" << to_string(c.role) << "\" data-ring=\"" << c.ring << "\" d=\"";
    for (std::size_t k = 0; k < c.samples.size(); ++k) {
      const auto& s = c.samples[k];
      const double x = s.r * std::cos(s.theta) * kUnitsPerMetre;
      // SVG y grows downward; z is drawn upward.
      const double y = -s.r * std::sin(s.theta) * kUnitsPerMetre;
      out << (k == 0 ? "M" : " L") << fmt::fixed(x, 3) << ',' << fmt::fixed(y, 3);
    }
    out << " Z\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string to_csv(const ResonatorGeometry& g) {
  std::ostringstream out;
  out << "ring,role,theta_rad,r_m\n";
  for (const auto& c : g.contours) {
    for (const auto& s : c.samples) {
      out << c.ring << ',' << to_string(c.role) << ',' << fmt::shortest(s.theta) << ','
          << fmt::shortest(s.r) << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string export_geometry(const ResonatorGeometry& geometry, GeometryFormat format) {
  return format == GeometryFormat::Svg ? to_svg(geometry) : to_csv(geometry);
}

}  // namespace sawom
