#include "sawom/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sawom/bessel.hpp"
#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/format.hpp"
#include "sawom/lsq.hpp"

namespace sawom {

double default_decay_depth(double lambda_saw) { return lambda_saw / constants::two_pi; }

namespace {

struct Profiles {
  std::vector<double> along_x;
  std::vector<double> along_z;
};

// Orthogonal-axis sums of |carrier| * gx * gz without materialising the product.
Profiles envelope_profiles(const Field2D& abs_carrier, std::span<const double> gx,
                           std::span<const double> gz) {
  const std::size_t n = abs_carrier.grid.points();
  Profiles p{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t ix = 0; ix < n; ++ix) {
    double row = 0.0;
    for (std::size_t iz = 0; iz < n; ++iz) {
      const double c = abs_carrier.at(ix, iz);
      row += c * gz[iz];
      p.along_z[iz] += c * gx[ix];
    }
    p.along_x[ix] = row * gx[ix];
  }
  for (std::size_t iz = 0; iz < n; ++iz) p.along_z[iz] *= gz[iz];
  return p;
}

std::vector<double> gaussian_weights(const Grid2D& grid, double radius) {
  std::vector<double> g(grid.points());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = grid.coordinate(i) / radius;
    g[i] = std::exp(-t * t);
  }
  return g;
}

std::vector<double> coordinates(const Grid2D& grid) {
  std::vector<double> c(grid.points());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = grid.coordinate(i);
  return c;
}

}  // namespace

ModeField synthesize_mode_field(const ModeSpec& spec, unsigned threads) {
  if (!(spec.r_x > 0.0) || !(spec.r_z > 0.0) || !(spec.lambda_saw > 0.0) || !(spec.u0 > 0.0) ||
      !(spec.grid_extent > 0.0)) {
    throw ValidationError("mode: all lengths must be positive");
  }
  if (spec.grid_points < 64) throw ValidationError("mode: grid_points must be >= 64");
  if (spec.grid_extent < spec.lambda_saw) throw ValidationError("grid too small");

  ModeField mode;
  mode.u0 = spec.u0;
  mode.lambda_saw = spec.lambda_saw;
  mode.k_m = constants::two_pi / spec.lambda_saw;
  mode.decay_depth = spec.decay_depth > 0.0 ? spec.decay_depth : default_decay_depth(spec.lambda_saw);
  mode.r_x = spec.r_x;
  mode.r_z = spec.r_z;

  const Grid2D grid(spec.grid_extent, spec.grid_points);
  const std::size_t n = grid.points();
  const double r_bar = std::sqrt(spec.r_x * spec.r_z);
  const double sx = r_bar / spec.r_x;
  const double sz = r_bar / spec.r_z;

  Field2D carrier{grid, std::vector<double>(grid.size())};
  parallel_rows(n, threads, [&](std::size_t ix) {
    const double xs = grid.coordinate(ix) * sx;
    for (std::size_t iz = 0; iz < n; ++iz) {
      const double zs = grid.coordinate(iz) * sz;
      carrier.values[grid.index(ix, iz)] = bessel::j0(mode.k_m * std::sqrt(xs * xs + zs * zs));
    }
  });

  const Field2D abs_carrier = magnitude(carrier);
  const std::vector<double> coords = coordinates(grid);
  double ex = spec.r_x;
  double ez = spec.r_z;
  bool calibrated = false;
  for (int it = 0; it < 60 && !calibrated; ++it) {
    const auto gx = gaussian_weights(grid, ex);
    const auto gz = gaussian_weights(grid, ez);
    const Profiles p = envelope_profiles(abs_carrier, gx, gz);
    const double fx = fit_gaussian_profile(coords, p.along_x).radius;
    const double fz = fit_gaussian_profile(coords, p.along_z).radius;
    const double cx = spec.r_x / fx;
    const double cz = spec.r_z / fz;
    calibrated = std::fabs(cx - 1.0) < 1e-7 && std::fabs(cz - 1.0) < 1e-7;
    ex *= cx;
    ez *= cz;
    if (!std::isfinite(ex) || !std::isfinite(ez) || ex > 1e3 * spec.grid_extent) break;
  }
  if (!calibrated) {
    throw ComputationError("mode: envelope calibration failed; radii (" + fmt::shortest(spec.r_x) +
                           ", " + fmt::shortest(spec.r_z) + ") m not reachable on this grid");
  }
  mode.envelope_x = ex;
  mode.envelope_z = ez;

  const auto gx = gaussian_weights(grid, ex);
  const auto gz = gaussian_weights(grid, ez);
  mode.u = Field2D{grid, std::vector<double>(grid.size())};
  parallel_rows(n, threads, [&](std::size_t ix) {
    for (std::size_t iz = 0; iz < n; ++iz) {
      const std::size_t k = grid.index(ix, iz);
      mode.u.values[k] = spec.u0 * carrier.values[k] * gx[ix] * gz[iz];
    }
  });
  return mode;
}

double first_node(const ModeField& mode, Axis axis) {
  const double r_bar = std::sqrt(mode.r_x * mode.r_z);
  const double r_axis = axis == Axis::X ? mode.r_x : mode.r_z;
  return bessel::j0_zero(1) / mode.k_m * r_axis / r_bar;
}

GaussianProfileFit fit_gaussian_profile(std::span<const double> coords, std::span<const double> values) {
  if (coords.size() != values.size()) throw ValidationError("profile: size mismatch");
  if (values.size() < 8) throw ValidationError("profile: need at least 8 samples");

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  if (*max_it == *min_it) throw ValidationError("profile: identically flat map");
  const double peak = *max_it - *min_it;
  const double x_peak = coords[static_cast<std::size_t>(max_it - values.begin())];

  double w_sum = 0.0;
  double m1 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = values[i] - *min_it;
    w_sum += w;
    m1 += w * coords[i];
  }
  const double mean = m1 / w_sum;
  double m2 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = coords[i] - mean;
    m2 += (values[i] - *min_it) * d * d;
  }
  const double r0 = std::max(std::sqrt(2.0 * m2 / w_sum), std::fabs(coords[1] - coords[0]));

  lsq::Problem pb;
  pb.n_residuals = static_cast<Eigen::Index>(values.size());
  pb.initial = Eigen::Vector4d(peak, x_peak, r0, *min_it);
  pb.scale = Eigen::Vector4d(peak, r0, r0, peak);
  pb.residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double t = (coords[i] - p[1]) / p[2];
      r[static_cast<Eigen::Index>(i)] = p[0] * std::exp(-t * t) + p[3] - values[i];
    }
  };
  const lsq::Result res = lsq::levenberg_marquardt(pb);
  if (!res.converged || !std::isfinite(res.params[2])) {
    throw ComputationError("fit failed: Gaussian profile did not converge after " +
                           std::to_string(res.iterations) + " iterations, residual rms " +
                           fmt::shortest(res.residual_rms));
  }
  return GaussianProfileFit{res.params[0], res.params[1], std::fabs(res.params[2]), res.params[3],
                            res.residual_rms, res.iterations};
}

double fit_mode_radius(const Field2D& map, Axis axis) {
  const Grid2D& grid = map.grid;
  const std::size_t n = grid.points();
  if (n < 8) throw ValidationError("profile: need at least 8 samples");
  std::vector<double> profile(n, 0.0);
  bool any = false;
  for (std::size_t ix = 0; ix < n; ++ix) {
    for (std::size_t iz = 0; iz < n; ++iz) {
      const double v = map.at(ix, iz);
      if (v < 0.0) throw ValidationError("profile: map must be nonnegative");
      any = any || v != 0.0;
      profile[axis == Axis::X ? ix : iz] += v;
    }
  }
  if (!any) throw ValidationError("profile: map is identically zero");
  return fit_gaussian_profile(coordinates(grid), profile).radius;
}

Field2D magnitude(const Field2D& field) {
  Field2D out{field.grid, field.values};
  for (double& v : out.values) v = std::fabs(v);
  return out;
}

ModeArea bessel_mode_area(double r_eff, double lambda_saw) {
  if (!(lambda_saw > 0.0)) throw ValidationError("invalid wavelength");
  if (!(r_eff > lambda_saw / 2.0)) throw ValidationError("sub-wavelength resonator");
  ModeArea a;
  a.r_eff = r_eff;
  a.n_nodes = static_cast<unsigned>(std::lround(2.0 * r_eff / lambda_saw));
  const double j1 = bessel::j1(bessel::j0_zero(a.n_nodes));
  a.a_exact = constants::pi * r_eff * r_eff * j1 * j1;
  a.a_asymptotic = lambda_saw * r_eff / constants::pi;
  a.eta = a.a_exact / (lambda_saw * r_eff);
  return a;
}

double focusing_gain(const ModeArea& area) {
  return constants::pi * area.r_eff * area.r_eff / area.a_exact;
}

double effective_area_from_radii(double r_x, double r_z) {
  if (!(r_x > 0.0) || !(r_z > 0.0)) throw ValidationError("radii must be positive");
  return constants::pi * r_x * r_z;
}

double zero_point_amplitude(const MaterialProperties& material, double area, double f_m,
                            double decay_depth) {
  if (!(area > 0.0) || !(f_m > 0.0) || !(decay_depth > 0.0) || !(material.density > 0.0)) {
    throw ValidationError("zero-point amplitude: inputs must be positive");
  }
  const double mass = material.density * area * decay_depth;
  return std::sqrt(constants::hbar / (2.0 * mass * constants::two_pi * f_m));
}

double strain_to_amplitude(double shear_strain, double k_m) {
  if (!(k_m > 0.0)) throw ValidationError("wavenumber must be positive");
  return shear_strain / k_m;
}

}  // namespace sawom
