#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sawom/acoustics.hpp"
#include "sawom/bessel.hpp"
#include "sawom/constants.hpp"
#include "sawom/errors.hpp"

using namespace sawom;

namespace {

ModeField reference_mode(unsigned threads = 1) {
  return synthesize_mode_field(ModeSpec{}, threads);
}

Field2D gaussian_map(double radius_x, double radius_z, double noise, std::uint64_t seed) {
  Field2D f{Grid2D(600e-6, 301), {}};
  f.values.resize(f.grid.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::size_t ix = 0; ix < f.grid.points(); ++ix) {
    for (std::size_t iz = 0; iz < f.grid.points(); ++iz) {
      const double x = f.grid.coordinate(ix) / radius_x;
      const double z = f.grid.coordinate(iz) / radius_z;
      const double v = std::exp(-x * x - z * z);
      f.values[f.grid.index(ix, iz)] = std::max(0.0, v + noise * n(rng));
    }
  }
  return f;
}

}  // namespace

TEST_CASE("Bessel mode area for the 1 mm resonator") {
  const ModeArea a = bessel_mode_area(1e-3, 40e-6);
  CHECK(a.n_nodes == 50);
  // mpmath: 1 / J1(alpha_0,50)^2 = 245.5064...
  CHECK(focusing_gain(a) == doctest::Approx(245.506409537081).epsilon(1e-10));
  CHECK(constants::pi * 1e-6 / a.a_asymptotic == doctest::Approx(246.740110027234).epsilon(1e-12));
  CHECK(a.eta == doctest::Approx(0.319909433272381).epsilon(1e-10));
  CHECK(std::fabs(a.eta - 1.0 / constants::pi) < 0.01 / constants::pi);
}

TEST_CASE("single-node mode area") {
  const double r = 25e-6;  // 2 r / lambda = 1.25 -> n = 1
  const ModeArea a = bessel_mode_area(r, 40e-6);
  CHECK(a.n_nodes == 1);
  CHECK(a.a_exact == doctest::Approx(constants::pi * r * r * 0.269514123941917).epsilon(1e-12));
}

TEST_CASE("eta converges monotonically to 1/pi") {
  const double lambda = 40e-6;
  double prev = 1.0;
  for (unsigned n = 10; n <= 200; ++n) {
    const ModeArea a = bessel_mode_area(n * lambda / 2.0, lambda);
    REQUIRE(a.n_nodes == n);
    CHECK(a.eta < prev);
    CHECK(a.eta > 1.0 / constants::pi);
    const double ratio = a.a_exact / a.a_asymptotic;
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
    prev = a.eta;
  }
  CHECK_THROWS_WITH_AS(bessel_mode_area(20e-6, 40e-6), "sub-wavelength resonator", ValidationError);
}

TEST_CASE("synthesised mode: peak, symmetry, nodes") {
  const ModeField m = reference_mode();
  const Grid2D& g = m.u.grid;
  const std::size_t c = g.nearest(0.0);
  CHECK(g.coordinate(c) == 0.0);
  CHECK(m.u.at(c, c) == m.u0);
  double peak = 0.0;
  for (double v : m.u.values) peak = std::max(peak, std::fabs(v));
  CHECK(peak == m.u0);
  const std::size_t n = g.points();
  for (std::size_t ix = 0; ix < n; ++ix) {
    for (std::size_t iz = 0; iz < n; ++iz) {
      REQUIRE(m.u.at(ix, iz) == m.u.at(n - 1 - ix, iz));
      REQUIRE(m.u.at(ix, iz) == m.u.at(ix, n - 1 - iz));
    }
  }
  // First zero along x from the scaled J0 argument.
  const double r_bar = std::sqrt(m.r_x * m.r_z);
  const double expected = 2.404825557695773 / m.k_m * m.r_x / r_bar;
  CHECK(first_node(m, Axis::X) == doctest::Approx(expected).epsilon(1e-14));
  const std::size_t i = g.nearest(expected);
  const std::size_t lo = g.coordinate(i) < expected ? i : i - 1;
  CHECK(m.u.at(lo, c) > 0.0);
  CHECK(m.u.at(lo + 1, c) < 0.0);
}

TEST_CASE("isotropic mode: node spacing approaches lambda/2") {
  ModeSpec spec;
  spec.r_x = spec.r_z = 105e-6;
  const ModeField m = synthesize_mode_field(spec);
  const Grid2D& g = m.u.grid;
  const std::size_t c = g.nearest(0.0);
  std::vector<double> zeros;
  for (std::size_t ix = c; ix + 1 < g.points(); ++ix) {
    const double a = m.u.at(ix, c);
    const double b = m.u.at(ix + 1, c);
    if ((a > 0.0) != (b > 0.0)) zeros.push_back(g.coordinate(ix) + g.spacing() * a / (a - b));
  }
  REQUIRE(zeros.size() >= 10);
  const double far_spacing = zeros[zeros.size() - 1] - zeros[zeros.size() - 2];
  CHECK(far_spacing == doctest::Approx(spec.lambda_saw / 2.0).epsilon(0.01));
  CHECK(std::fabs(zeros[1] - zeros[0] - spec.lambda_saw / 2.0) > std::fabs(far_spacing - spec.lambda_saw / 2.0));
}

TEST_CASE("mode synthesis is bit-identical across thread counts") {
  const ModeField a = reference_mode(1);
  const ModeField b = reference_mode(8);
  CHECK(a.u.values == b.u.values);
  CHECK(a.envelope_x == b.envelope_x);
}

TEST_CASE("mode synthesis input validation") {
  ModeSpec spec;
  spec.grid_extent = 30e-6;
  CHECK_THROWS_WITH_AS(synthesize_mode_field(spec), "grid too small", ValidationError);
  spec = ModeSpec{};
  spec.grid_points = 63;
  CHECK_THROWS_AS(synthesize_mode_field(spec), ValidationError);
  spec = ModeSpec{};
  spec.u0 = 0.0;
  CHECK_THROWS_AS(synthesize_mode_field(spec), ValidationError);
}

TEST_CASE("Gaussian radius fit") {
  const Field2D clean = gaussian_map(100e-6, 130e-6, 0.0, 0);
  CHECK(fit_mode_radius(clean, Axis::X) == doctest::Approx(100e-6).epsilon(1e-3));
  CHECK(fit_mode_radius(clean, Axis::Z) == doctest::Approx(130e-6).epsilon(1e-3));

  // Monte-Carlo: 1% white noise, fixed seeds.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Field2D noisy = gaussian_map(100e-6, 100e-6, 0.01, seed);
    CHECK(fit_mode_radius(noisy, Axis::X) == doctest::Approx(100e-6).epsilon(0.02));
    CHECK(fit_mode_radius(noisy, Axis::Z) == doctest::Approx(100e-6).epsilon(0.02));
  }
}

TEST_CASE("fitted radii of the reference mode reproduce (100, 110) um") {
  const ModeField m = reference_mode();
  const Field2D mag = magnitude(m.u);
  CHECK(fit_mode_radius(mag, Axis::X) == doctest::Approx(100e-6).epsilon(0.05));
  CHECK(fit_mode_radius(mag, Axis::Z) == doctest::Approx(110e-6).epsilon(0.05));
  // Bessel fringes narrow the profile, so the envelope must be wider than the target.
  CHECK(m.envelope_x > m.r_x);
  CHECK(m.envelope_z > m.r_z);
}

TEST_CASE("radius fit preconditions") {
  Field2D zero{Grid2D(1e-4, 16), std::vector<double>(256, 0.0)};
  CHECK_THROWS_AS(fit_mode_radius(zero, Axis::X), ValidationError);
  Field2D tiny{Grid2D(1e-4, 7), std::vector<double>(49, 1.0)};
  CHECK_THROWS_AS(fit_mode_radius(tiny, Axis::X), ValidationError);
  Field2D negative = gaussian_map(100e-6, 100e-6, 0.0, 0);
  negative.values[0] = -1.0;
  CHECK_THROWS_AS(fit_mode_radius(negative, Axis::Z), ValidationError);
}

TEST_CASE("effective area from radii") {
  const double a = effective_area_from_radii(100e-6, 110e-6);
  CHECK(a == doctest::Approx(3.45575191894877e-8).epsilon(1e-12));
  CHECK(constants::pi * 1e-6 / a == doctest::Approx(90.9090909090909).epsilon(1e-12));
  CHECK(effective_area_from_radii(3e-5, 3e-5) == doctest::Approx(constants::pi * 9e-10).epsilon(1e-15));
  CHECK(effective_area_from_radii(2e-4, 2.2e-4) == doctest::Approx(4.0 * a).epsilon(1e-15));
}

TEST_CASE("zero-point amplitude") {
  const auto m = material_for_cut(CutLabel::YCut);
  const double area = effective_area_from_radii(100e-6, 110e-6);
  const double d = default_decay_depth(40e-6);
  const double u = zero_point_amplitude(m, area, 86.4e6, d);
  CHECK(u == doctest::Approx(9.74402658735462e-18).epsilon(1e-12));
  CHECK(zero_point_amplitude(m, 4.0 * area, 86.4e6, d) == doctest::Approx(u / 2.0).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = area * unit(rng);
    const double f = 1e8 * unit(rng);
    const double dd = d * unit(rng);
    const double z = zero_point_amplitude(m, a, f, dd);
    CHECK(z * z * (2.0 * m.density * a * dd * constants::two_pi * f) ==
          doctest::Approx(constants::hbar).epsilon(1e-14));
  }
}

TEST_CASE("strain to amplitude") {
  const double k = constants::two_pi / 40e-6;
  CHECK(strain_to_amplitude(7.85e-13, k) == doctest::Approx(4.99746521308551e-18).epsilon(1e-12));
  CHECK(strain_to_amplitude(0.0, k) == 0.0);
  CHECK(strain_to_amplitude(2e-12, k) == 2.0 * strain_to_amplitude(1e-12, k));
  CHECK_THROWS_AS(strain_to_amplitude(1e-12, 0.0), ValidationError);
}
