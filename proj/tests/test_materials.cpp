#include <doctest.h>

#include <cmath>
#include <future>
#include <random>
#include <vector>

#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/materials.hpp"

using namespace sawom;

TEST_CASE("built-in cuts") {
  const auto y = material_for_cut(CutLabel::YCut);
  CHECK(y.v_saw == 3488.0);
  CHECK(y.tensor.p31 == 0.177);
  CHECK(y.tensor.p12 == 0.088);
  CHECK(y.tensor.p14 == -0.083);
  CHECK(y.n_e == 2.16);
  CHECK(y.n_o == 2.24);
  CHECK(y.density == 4650.0);
  CHECK(y.anisotropy.isotropic());
  CHECK(material_for_cut(CutLabel::Y128Cut).v_saw == 3997.0);
}

TEST_CASE("cut label parsing") {
  CHECK(parse_cut_label("Y") == CutLabel::YCut);
  CHECK(parse_cut_label("y-cut") == CutLabel::YCut);
  CHECK(parse_cut_label("128Y") == CutLabel::Y128Cut);
  CHECK(parse_cut_label("128°Y-cut") == CutLabel::Y128Cut);
  CHECK(parse_cut_label("custom") == CutLabel::Custom);
  CHECK_THROWS_WITH_AS(parse_cut_label("Z"), doctest::Contains("unknown material cut"), ValidationError);
}

TEST_CASE("custom cut requires a record") {
  CHECK_THROWS_WITH_AS(material_for_cut(CutLabel::Custom), "unknown material cut", ValidationError);
  MaterialProperties gaas;
  gaas.name = "GaAs";
  gaas.v_saw = 2860.0;
  gaas.n_e = 3.5;
  gaas.n_o = 3.5;
  gaas.density = 5317.0;
  gaas.anisotropy = AnisotropyProfile(2860.0);
  const auto m = material_for_cut(CutLabel::Custom, &gaas);
  CHECK(m.v_saw == 2860.0);
  CHECK(m.cut == CutLabel::Custom);
  gaas.density = -1.0;
  CHECK_THROWS_AS(material_for_cut(CutLabel::Custom, &gaas), ValidationError);
}

TEST_CASE("material_for_cut is referentially transparent across threads") {
  const auto ref = material_for_cut(CutLabel::YCut);
  std::vector<std::future<MaterialProperties>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [] { return material_for_cut(CutLabel::YCut); }));
  }
  for (auto& j : jobs) CHECK(j.get() == ref);
}

TEST_CASE("resonance frequency") {
  CHECK(resonance_frequency(material_for_cut(CutLabel::YCut), 40e-6) == doctest::Approx(87.2e6));
  CHECK(resonance_frequency(material_for_cut(CutLabel::Y128Cut), 40e-6) == doctest::Approx(99.925e6));
  MaterialProperties unit;
  unit.v_saw = 1.0;
  CHECK(resonance_frequency(unit, 1.0) == 1.0);
  CHECK_THROWS_WITH_AS(resonance_frequency(unit, 0.0), "invalid wavelength", ValidationError);
  CHECK_THROWS_WITH_AS(resonance_frequency(unit, -40e-6), "invalid wavelength", ValidationError);
}

TEST_CASE("resonance frequency is homogeneous in wavelength") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lam(1e-6, 1e-3);
  const auto m = material_for_cut(CutLabel::YCut);
  for (int i = 0; i < 1000; ++i) {
    const double l = lam(rng);
    CHECK(resonance_frequency(m, 2.0 * l) == resonance_frequency(m, l) / 2.0);
  }
}

TEST_CASE("group velocity") {
  const AnisotropyProfile iso(3488.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-100.0, 100.0);
  for (int i = 0; i < 1000000; ++i) {
    if (group_velocity(iso, angle(rng)) != 3488.0) {
      FAIL("isotropic profile not constant");
    }
  }
  const AnisotropyProfile a1(3488.0, {{1, 0.1}});
  CHECK(group_velocity(a1, 0.0) == doctest::Approx(3836.8).epsilon(1e-14));
  const AnisotropyProfile mixed(3488.0, {{1, 0.05}, {2, -0.02}, {3, 0.01}});
  for (int i = 0; i < 1000; ++i) {
    const double t = angle(rng);
    CHECK(group_velocity(mixed, t) == doctest::Approx(group_velocity(mixed, t + constants::pi)).epsilon(1e-12));
  }
}

TEST_CASE("anisotropy profile validation") {
  CHECK_THROWS_AS(AnisotropyProfile(3488.0, {{1, 1.2}}), ValidationError);
  CHECK_THROWS_AS(AnisotropyProfile(3488.0, {{0, 0.1}}), ValidationError);
  CHECK_THROWS_AS(AnisotropyProfile(-1.0), ValidationError);
  CHECK_NOTHROW(AnisotropyProfile(3488.0, {{1, 0.5}, {2, 0.3}}));
}
