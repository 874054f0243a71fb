#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/optoelastics.hpp"

using namespace sawom;

namespace {

const MaterialProperties kYCut = material_for_cut(CutLabel::YCut);
constexpr double kLambdaOpt = 1064e-9;

const ModeField& reference_mode() {
  static const ModeField m = synthesize_mode_field(ModeSpec{});
  return m;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("index shift coefficients") {
  const double s = 1e-6;
  CHECK(refractive_index_shift(s, 0.0, Polarization::Z, kYCut) == doctest::Approx(-0.891876096 * s).epsilon(1e-12));
  CHECK(refractive_index_shift(0.0, s, Polarization::X, kYCut) == doctest::Approx(0.466436096 * s).epsilon(1e-12));
  CHECK(refractive_index_shift(s, 0.0, Polarization::X, kYCut) == doctest::Approx(-0.494534656 * s).epsilon(1e-12));
  CHECK(refractive_index_shift(0.0, 0.0, Polarization::X, kYCut) == 0.0);
  CHECK(refractive_index_shift(0.0, 0.0, Polarization::Z, kYCut) == 0.0);
  // Shear strain does not enter the Z index.
  CHECK(refractive_index_shift(0.0, s, Polarization::Z, kYCut) == 0.0);
}

TEST_CASE("Z map: peak at the origin, proportional to U, even") {
  const ModeField& m = reference_mode();
  const PhaseMap z = integrated_phase_map(m, kYCut, Polarization::Z, kLambdaOpt);
  const Grid2D& g = z.phi.grid;
  const std::size_t c = g.nearest(0.0);
  CHECK(axis_argmax(z.phi, Axis::Z) == 0.0);
  CHECK(axis_argmax(z.phi, Axis::X) == 0.0);
  const double expected = constants::two_pi / kLambdaOpt * 0.891876096 * m.u0;
  CHECK(z.phi.at(c, c) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(correlation(magnitude(z.phi).values, magnitude(m.u).values) == doctest::Approx(1.0).epsilon(1e-12));
  const std::size_t n = g.points();
  for (std::size_t ix = 0; ix < n; ix += 3) {
    for (std::size_t iz = 0; iz < n; iz += 3) {
      REQUIRE(z.phi.at(ix, iz) == z.phi.at(n - 1 - ix, iz));
      REQUIRE(z.phi.at(ix, iz) == z.phi.at(ix, n - 1 - iz));
    }
  }
}

TEST_CASE("Z map is independent of the decay depth; X shear term is linear in it") {
  ModeField shallow = reference_mode();
  ModeField deep = shallow;
  deep.decay_depth = 2.0 * shallow.decay_depth;
  const PhaseMap z1 = integrated_phase_map(shallow, kYCut, Polarization::Z, kLambdaOpt);
  const PhaseMap z2 = integrated_phase_map(deep, kYCut, Polarization::Z, kLambdaOpt);
  for (std::size_t k = 0; k < z1.phi.values.size(); ++k) {
    REQUIRE(std::fabs(z1.phi.values[k] - z2.phi.values[k]) <= 1e-12 * std::fabs(z1.phi.values[k]));
  }

  const PhaseMap x1 = integrated_phase_map(shallow, kYCut, Polarization::X, kLambdaOpt);
  const PhaseMap x2 = integrated_phase_map(deep, kYCut, Polarization::X, kLambdaOpt);
  const double c12 = constants::two_pi / kLambdaOpt * 0.5 * std::pow(kYCut.n_o, 3) * kYCut.tensor.p12;
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < x1.phi.values.size(); ++k) {
    const double shear1 = x1.phi.values[k] - c12 * shallow.u.values[k];
    const double shear2 = x2.phi.values[k] - c12 * deep.u.values[k];
    worst = std::max(worst, std::fabs(shear2 - 2.0 * shear1));
    scale = std::max(scale, std::fabs(shear1));
  }
  CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("X map argmax leaves z = 0 only through p14") {
  const ModeField& m = reference_mode();
  const PhaseMap x = integrated_phase_map(m, kYCut, Polarization::X, kLambdaOpt);
  CHECK(axis_argmax(x.phi, Axis::Z) != 0.0);
  // The shear term has no effect along x through the origin.
  CHECK(axis_argmax(x.phi, Axis::X) == 0.0);

  MaterialProperties no_shear = kYCut;
  no_shear.tensor.p14 = 0.0;
  const PhaseMap x0 = integrated_phase_map(m, no_shear, Polarization::X, kLambdaOpt);
  CHECK(axis_argmax(x0.phi, Axis::Z) == 0.0);
}

TEST_CASE("phase maps are linear in the drive amplitude") {
  ModeSpec spec;
  const ModeField a = synthesize_mode_field(spec);
  spec.u0 *= 4.0;
  const ModeField b = synthesize_mode_field(spec);
  for (auto pol : {Polarization::X, Polarization::Z}) {
    const PhaseMap pa = integrated_phase_map(a, kYCut, pol, kLambdaOpt);
    const PhaseMap pb = integrated_phase_map(b, kYCut, pol, kLambdaOpt);
    for (std::size_t k = 0; k < pa.phi.values.size(); k += 7) {
      REQUIRE(pb.phi.values[k] == 4.0 * pa.phi.values[k]);
    }
  }
}

TEST_CASE("phase maps are bit-identical across thread counts") {
  for (auto pol : {Polarization::X, Polarization::Z}) {
    const PhaseMap one = integrated_phase_map(reference_mode(), kYCut, pol, kLambdaOpt, 1);
    const PhaseMap eight = integrated_phase_map(reference_mode(), kYCut, pol, kLambdaOpt, 8);
    CHECK(one.phi.values == eight.phi.values);
  }
}

TEST_CASE("undersampled grid is rejected") {
  ModeSpec spec;
  spec.grid_points = 64;  // 8.1 um spacing > lambda/8
  const ModeField coarse = synthesize_mode_field(spec);
  CHECK_THROWS_WITH_AS(integrated_phase_map(coarse, kYCut, Polarization::Z, kLambdaOpt),
                       "undersampled grid", ValidationError);
}

TEST_CASE("beam sampling") {
  const ModeField& m = reference_mode();
  const PhaseMap z = integrated_phase_map(m, kYCut, Polarization::Z, kLambdaOpt);
  const Grid2D& g = z.phi.grid;
  const std::size_t c = g.nearest(0.0);

  SUBCASE("delta limit") {
    const double phi = beam_sampled_phase(z, BeamSpot{0.0, 0.0, g.spacing()});
    CHECK(phi == doctest::Approx(std::fabs(z.phi.at(c, c))).epsilon(0.02));
  }
  SUBCASE("uniform map") {
    PhaseMap flat = z;
    std::fill(flat.phi.values.begin(), flat.phi.values.end(), 0.25);
    for (double w : {1e-6, 3.5e-6, 20e-6}) {
      CHECK(beam_sampled_phase(flat, BeamSpot{12e-6, -40e-6, w}) == doctest::Approx(0.25).epsilon(1e-14));
    }
  }
  SUBCASE("node suppression") {
    const double node = first_node(m, Axis::Z);
    const double at_node = beam_sampled_phase(z, BeamSpot{0.0, node, 3.5e-6});
    const double at_antinode = beam_sampled_phase(z, BeamSpot{0.0, 0.0, 3.5e-6});
    CHECK(at_antinode >= 100.0 * at_node);
  }
  SUBCASE("errors") {
    CHECK_THROWS_WITH_AS(beam_sampled_phase(z, BeamSpot{1e-3, 0.0, 3.5e-6}), "spot out of bounds",
                         ValidationError);
    CHECK_THROWS_AS(beam_sampled_phase(z, BeamSpot{0.0, 0.0, 0.5 * g.spacing()}), ValidationError);
  }
}

TEST_CASE("polarization selectivity") {
  const ModeField& m = reference_mode();
  SUBCASE("position A: both polarizations modulated") {
    const Selectivity s = polarization_selectivity(m, kYCut, BeamSpot{0.0, 0.0, 3.5e-6}, kLambdaOpt);
    // (n_o^3 p12 / n_e^3 p31)^2; the shear term cancels under the symmetric beam.
    CHECK(s.ratio == doctest::Approx(0.307457020829014).epsilon(1e-9));
    CHECK_FALSE(s.infinite);
  }
  SUBCASE("position B: Z suppressed") {
    const double node = first_node(m, Axis::Z);
    const Selectivity s = polarization_selectivity(m, kYCut, BeamSpot{0.0, node, 3.5e-6}, kLambdaOpt);
    CHECK(s.ratio >= 100.0);
  }
  SUBCASE("p14 ablation collapses to the p12-only ratio") {
    MaterialProperties no_shear = kYCut;
    no_shear.tensor.p14 = 0.0;
    const double node = first_node(m, Axis::Z);
    const Selectivity s = polarization_selectivity(m, no_shear, BeamSpot{0.0, node, 3.5e-6}, kLambdaOpt);
    CHECK(s.ratio == doctest::Approx(0.307457020829014).epsilon(1e-6));
  }
  SUBCASE("phi_Z exactly zero gives the infinite sentinel") {
    MaterialProperties no_p31 = kYCut;
    no_p31.tensor.p31 = 0.0;
    const Selectivity s = polarization_selectivity(m, no_p31, BeamSpot{0.0, 0.0, 3.5e-6}, kLambdaOpt);
    CHECK(s.infinite);
    CHECK(std::isinf(s.ratio));
  }
}

TEST_CASE("sideband power map is normalised") {
  const PhaseMap z = integrated_phase_map(reference_mode(), kYCut, Polarization::Z, kLambdaOpt);
  const Field2D p = sideband_power_map(z);
  const auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
  CHECK(*hi == 1.0);
  CHECK(*lo >= 0.0);
}
