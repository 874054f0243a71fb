#include "sawom/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "sawom/constants.hpp"
#include "sawom/errors.hpp"

namespace sawom {

std::string_view to_string(CutLabel cut) {
  switch (cut) {
    case CutLabel::YCut:
      return "Y-cut";
    case CutLabel::Y128Cut:
      return "128°Y-cut";
    case CutLabel::Custom:
      return "custom";
  }
  return "custom";
}

CutLabel parse_cut_label(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (c == ' ' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  // The degree sign is two bytes in UTF-8; drop it so "128°Y" == "128Y".
  if (auto pos = key.find("\xC2\xB0"); pos != std::string::npos) key.erase(pos, 2);
  if (key.ends_with("-cut")) key.resize(key.size() - 4);
  if (key.ends_with("cut")) key.resize(key.size() - 3);
  if (key == "y") return CutLabel::YCut;
  if (key == "128y") return CutLabel::Y128Cut;
  if (key == "custom") return CutLabel::Custom;
  throw ValidationError("unknown material cut: " + std::string(text));
}

AnisotropyProfile::AnisotropyProfile(double v0) : AnisotropyProfile(v0, {}) {}

AnisotropyProfile::AnisotropyProfile(double v0, std::vector<Term> terms)
    : v0_(v0), terms_(std::move(terms)) {
  if (!(v0_ > 0.0) || !std::isfinite(v0_)) {
    throw ValidationError("anisotropy profile: v0 must be positive");
  }
  for (const auto& t : terms_) {
    if (t.harmonic < 1) throw ValidationError("anisotropy profile: harmonic index must be >= 1");
    if (!std::isfinite(t.amplitude)) {
      throw ValidationError("anisotropy profile: non-finite amplitude");
    }
  }
  for (int i = 0; i < kPositivitySamples; ++i) {
    const double theta = constants::two_pi * i / kPositivitySamples;
    if (!(shape(theta) > 0.0)) {
      throw ValidationError("anisotropy profile: v(theta) not positive at theta = " +
                            std::to_string(theta));
    }
  }
}

double AnisotropyProfile::shape(double theta) const {
  double s = 1.0;
  for (const auto& t : terms_) s += t.amplitude * std::cos(2.0 * t.harmonic * theta);
  return s;
}

double group_velocity(const AnisotropyProfile& profile, double theta) {
  return profile.v0() * profile.shape(theta);
}

void validate(const MaterialProperties& m) {
  if (!(m.v_saw > 0.0)) throw ValidationError("material: v_saw must be positive");
  if (!(m.density > 0.0)) throw ValidationError("material: density must be positive");
  if (!(m.n_e > 1.0)) throw ValidationError("material: n_e must exceed 1");
  if (!(m.n_o > 1.0)) throw ValidationError("material: n_o must exceed 1");
  if (m.anisotropy.v0() != m.v_saw) {
    throw ValidationError("material: anisotropy v0 must equal v_saw");
  }
}

namespace {

MaterialProperties lithium_niobate(CutLabel cut, double v_saw) {
  MaterialProperties m;
  m.cut = cut;
  m.name = std::string(to_string(cut)) + " LiNbO3";
  m.v_saw = v_saw;
  m.n_e = 2.16;
  m.n_o = 2.24;
  // p12, p14, p31 drive the index model. The others are handbook values.
  m.tensor = OptoelasticTensor{.p11 = -0.026,
                               .p12 = 0.088,
                               .p13 = 0.133,
                               .p14 = -0.083,
                               .p31 = 0.177,
                               .p33 = 0.071,
                               .p41 = -0.151,
                               .p44 = 0.146};
  m.density = kLithiumNiobateDensity;
  m.anisotropy = AnisotropyProfile(v_saw);
  return m;
}

}  // namespace

MaterialProperties material_for_cut(CutLabel cut) { return material_for_cut(cut, nullptr); }

MaterialProperties material_for_cut(CutLabel cut, const MaterialProperties* custom) {
  switch (cut) {
    case CutLabel::YCut:
      return lithium_niobate(cut, 3488.0);
    case CutLabel::Y128Cut:
      return lithium_niobate(cut, 3997.0);
    case CutLabel::Custom:
      break;
  }
  if (custom == nullptr) throw ValidationError("unknown material cut");
  validate(*custom);
  MaterialProperties m = *custom;
  m.cut = CutLabel::Custom;
  return m;
}

double resonance_frequency(const MaterialProperties& material, double lambda_saw) {
  if (!(lambda_saw > 0.0) || !std::isfinite(lambda_saw)) {
    throw ValidationError("invalid wavelength");
  }
  return material.v_saw / lambda_saw;
}

}  // namespace sawom
