#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sawom {

enum class CutLabel { YCut, Y128Cut, Custom };

std::string_view to_string(CutLabel cut);
// Accepts "Y", "Y-cut", "128Y", "128°Y-cut", "128Y-cut", "custom" (case-insensitive).
CutLabel parse_cut_label(std::string_view text);

// Optoelastic coefficients in abbreviated (Voigt) notation. Only p12, p14 and
// p31 enter the u_y-dominant index model; the rest are carried for completeness.
struct OptoelasticTensor {
  double p11 = 0.0;
  double p12 = 0.0;
  double p13 = 0.0;
  double p14 = 0.0;
  double p31 = 0.0;
  double p33 = 0.0;
  double p41 = 0.0;
  double p44 = 0.0;

  friend bool operator==(const OptoelasticTensor&, const OptoelasticTensor&) = default;
};

// Direction-dependent SAW speed v(theta) = v0 (1 + sum_k a_k cos(2 k theta)).
class AnisotropyProfile {
 public:
  struct Term {
    int harmonic = 1;
    double amplitude = 0.0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  static constexpr int kPositivitySamples = 3600;

  // Isotropic profile.
  explicit AnisotropyProfile(double v0);
  // Throws ValidationError unless v0 > 0, every harmonic >= 1, and v(theta) > 0
  // at kPositivitySamples equally spaced angles.
  AnisotropyProfile(double v0, std::vector<Term> terms);

  [[nodiscard]] double v0() const { return v0_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool isotropic() const { return terms_.empty(); }

  // v(theta) / v0
  [[nodiscard]] double shape(double theta) const;

  friend bool operator==(const AnisotropyProfile&, const AnisotropyProfile&) = default;

 private:
  double v0_;
  std::vector<Term> terms_;
};

double group_velocity(const AnisotropyProfile& profile, double theta);

struct MaterialProperties {
  CutLabel cut = CutLabel::Custom;
  std::string name;
  double v_saw = 0.0;    // m/s along theta = 0
  double n_e = 0.0;
  double n_o = 0.0;
  OptoelasticTensor tensor;
  double density = 0.0;  // kg/m^3
  AnisotropyProfile anisotropy{1.0};

  friend bool operator==(const MaterialProperties&, const MaterialProperties&) = default;
};

// Throws ValidationError on v_saw/density <= 0, indices <= 1, or an
// anisotropy profile whose v0 differs from v_saw.
void validate(const MaterialProperties& material);

inline constexpr double kLithiumNiobateDensity = 4650.0;

// Built-in LiNbO3 constant sets. Custom needs a record: use the overload below.
MaterialProperties material_for_cut(CutLabel cut);
MaterialProperties material_for_cut(CutLabel cut, const MaterialProperties* custom);

// v_saw / lambda_saw. Throws ValidationError("invalid wavelength") if lambda <= 0.
double resonance_frequency(const MaterialProperties& material, double lambda_saw);

}  // namespace sawom
