#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sawom/grid.hpp"
#include "sawom/materials.hpp"

namespace sawom {

enum class Axis { X, Z };

// Scalar field sampled on a Grid2D, row-major (x slowest).
struct Field2D {
  Grid2D grid;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t ix, std::size_t iz) const { return values[grid.index(ix, iz)]; }
};

// Standing-wave out-of-plane displacement amplitude U(x, z) of the focused mode.
struct ModeField {
  Field2D u;                 // m
  double u0 = 0.0;           // m, value at the origin
  double lambda_saw = 0.0;   // m
  double k_m = 0.0;          // 1/m
  double decay_depth = 0.0;  // m, e^(-y/d) depth profile
  double r_x = 0.0;          // m, target 1/e radii of the fitted |U| profiles
  double r_z = 0.0;
  double envelope_x = 0.0;   // m, Gaussian envelope radii that realise r_x, r_z
  double envelope_z = 0.0;
};

struct ModeSpec {
  double r_x = 100e-6;
  double r_z = 110e-6;
  double lambda_saw = 40e-6;
  double u0 = 1e-12;
  double decay_depth = 0.0;  // <= 0 selects lambda_saw / (2 pi)
  double grid_extent = 512e-6;
  std::size_t grid_points = 513;
};

[[nodiscard]] double default_decay_depth(double lambda_saw);

// U = u0 J0(k_m rho~) exp(-(x/ex)^2 - (z/ez)^2),
// rho~ = sqrt((x Rbar/r_x)^2 + (z Rbar/r_z)^2), Rbar = sqrt(r_x r_z).
// The envelope radii (ex, ez) are solved for so that fit_mode_radius on |U|
// returns r_x and r_z on this grid.
ModeField synthesize_mode_field(const ModeSpec& spec, unsigned threads = 1);

// Position of the first displacement node of U along the given axis
// (positive side): alpha_01 / k_m * r_axis / Rbar.
[[nodiscard]] double first_node(const ModeField& mode, Axis axis);

struct GaussianProfileFit {
  double amplitude = 0.0;
  double center = 0.0;
  double radius = 0.0;  // 1/e half-width
  double offset = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
};

// Fit a exp(-(x - x0)^2 / R^2) + b to a 1D profile.
GaussianProfileFit fit_gaussian_profile(std::span<const double> coords, std::span<const double> values);

// Sum the nonnegative map over the axis orthogonal to `axis`, fit the
// Gaussian, return the 1/e radius.
double fit_mode_radius(const Field2D& map, Axis axis);

// |U| as a nonnegative map for fit_mode_radius.
Field2D magnitude(const Field2D& field);

struct ModeArea {
  double a_exact = 0.0;       // pi R^2 J1^2(alpha_0n)
  double a_asymptotic = 0.0;  // lambda R / pi
  double eta = 0.0;           // a_exact / (lambda R)
  unsigned n_nodes = 0;
  double r_eff = 0.0;
};

ModeArea bessel_mode_area(double r_eff, double lambda_saw);

// Flat resonator area pi R^2 over the focused a_exact.
[[nodiscard]] double focusing_gain(const ModeArea& area);

[[nodiscard]] double effective_area_from_radii(double r_x, double r_z);

// Zero-point amplitude of a mode with effective mass rho * area * depth.
[[nodiscard]] double zero_point_amplitude(const MaterialProperties& material, double area,
                                          double f_m, double decay_depth);

[[nodiscard]] double strain_to_amplitude(double shear_strain, double k_m);

}  // namespace sawom
