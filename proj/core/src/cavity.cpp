#include "sawom/cavity.hpp"

#include <cmath>
#include <string>

#include "sawom/acoustics.hpp"
#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/spectra.hpp"

namespace sawom {

void validate(const CavityParams& p) {
  if (!(p.length > 0.0)) throw ValidationError("cavity: length must be positive");
  if (!(p.mirror_roc > 0.0)) throw ValidationError("cavity: mirror radius of curvature must be positive");
  if (!(p.reflectivity > 0.0 && p.reflectivity < 1.0)) {
    throw ValidationError("cavity: reflectivity must lie in (0, 1)");
  }
  if (!(p.lambda_opt > 0.0)) throw ValidationError("invalid optical wavelength");
  if (p.kappa_measured && !(*p.kappa_measured > 0.0)) {
    throw ValidationError("cavity: measured kappa must be positive");
  }
}

CavityDerived cavity_derived_params(const CavityParams& p) {
  validate(p);
  CavityDerived d;
  d.fsr = constants::speed_of_light / (2.0 * p.length);
  const double r = p.reflectivity;
  d.finesse = constants::pi * std::sqrt(r) / (1.0 - r);
  d.kappa_derived = d.fsr / d.finesse;
  d.kappa = p.kappa_measured.value_or(d.kappa_derived);
  d.g = 1.0 - p.length / p.mirror_roc;
  d.stable = d.g * d.g < 1.0;
  if (d.stable) {
    // w0^2 = (lambda L / pi) sqrt((1 + g) / (4 (1 - g)))
    const double w0_sq = p.lambda_opt * p.length / constants::pi *
                         std::sqrt((1.0 + d.g) / (4.0 * (1.0 - d.g)));
    d.waist = std::sqrt(w0_sq);
  }
  return d;
}

double zero_point_phase(double phi_saw, double n_saw) {
  if (n_saw == 0.0) throw ValidationError("empty resonator calibration");
  if (!(n_saw >= 1.0)) throw ValidationError("zero-point phase: phonon number must be >= 1");
  return phi_saw / std::sqrt(n_saw);
}

CouplingRate g0_from_modulation(double phi_zpf, double lambda_opt, double cavity_length) {
  if (!(phi_zpf > 0.0) || !(lambda_opt > 0.0) || !(cavity_length > 0.0)) {
    throw ValidationError("g0: inputs must be positive");
  }
  CouplingRate c;
  c.delta_x = phi_zpf / constants::two_pi * lambda_opt;
  const double cavity_frequency = constants::speed_of_light / lambda_opt;
  c.g0_over_2pi = cavity_frequency * c.delta_x / cavity_length;
  return c;
}

std::vector<double> antistokes_response(const std::vector<double>& detunings, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  std::vector<double> out(detunings.size());
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    const double x = 2.0 * detunings[i] / kappa;
    out[i] = 1.0 / (1.0 + x * x);
  }
  return out;
}

double intracavity_photon_number(double p_in, double detuning, double kappa, double kappa_ext,
                                 double lambda_opt) {
  if (!(p_in > 0.0) || !(kappa > 0.0) || !(kappa_ext > 0.0) || !(lambda_opt > 0.0)) {
    throw ValidationError("photon number: inputs must be positive");
  }
  if (kappa_ext > kappa) throw ValidationError("overcoupled beyond total loss");
  const double photon_energy = constants::planck * constants::speed_of_light / lambda_opt;
  const double k = constants::two_pi * kappa;
  const double k_ext = constants::two_pi * kappa_ext;
  const double delta = constants::two_pi * detuning;
  return p_in / photon_energy * k_ext / (k * k / 4.0 + delta * delta);
}

double cooperativity(double n, double g0, double gamma_m, double kappa) {
  if (!(n > 0.0) || !(g0 > 0.0) || !(gamma_m > 0.0) || !(kappa > 0.0)) {
    throw ValidationError("cooperativity: inputs must be positive");
  }
  return 4.0 * n * g0 * g0 / (gamma_m * kappa);
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(name) + ": " + e.what());
  } catch (const ComputationError& e) {
    throw ComputationError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

CouplingBudget coupling_budget(const CalibrationBundle& b) {
  CouplingBudget out;
  const double f_m = b.f0;

  out.n_saw = stage("phonon_number_from_reflection",
                    [&] { return phonon_number_from_reflection(b.rf_power, b.s11_mag, b.f0, b.q); });
  out.phi_saw = stage("phase_from_sideband_calibration", [&] {
    return phase_from_sideband_calibration(b.sideband_power, b.reference_sideband_power,
                                           b.reference_phase);
  });
  out.phi_zpf = stage("zero_point_phase", [&] { return zero_point_phase(out.phi_saw, out.n_saw); });

  const CavityDerived cav = stage("cavity_derived_params", [&] { return cavity_derived_params(b.cavity); });
  out.cavity_kappa_derived = cav.kappa_derived;
  out.cavity_kappa = cav.kappa;

  const CouplingRate rate = stage("g0_from_modulation", [&] {
    return g0_from_modulation(out.phi_zpf, b.cavity.lambda_opt, b.cavity.length);
  });
  out.delta_x = rate.delta_x;
  out.g0 = rate.g0_over_2pi;

  stage("zero_point_amplitude", [&] {
    if (!(b.lambda_saw > 0.0)) throw ValidationError("invalid wavelength");
    out.k_m = constants::two_pi / b.lambda_saw;
    const double depth = b.decay_depth > 0.0 ? b.decay_depth : default_decay_depth(b.lambda_saw);
    if (b.shear_strain_zpf) {
      out.shear_strain_zpf = *b.shear_strain_zpf;
      out.shear_strain_measured = true;
    } else {
      // phi_zpf = (2 pi / lambda_opt) (1/2 n_o^3 |p14|) d (du_y/dz)
      const double n3 = b.material.n_o * b.material.n_o * b.material.n_o;
      const double coupling = 0.5 * n3 * std::fabs(b.material.tensor.p14) * depth;
      if (!(coupling > 0.0)) throw ValidationError("p14 shear coupling is zero");
      out.shear_strain_zpf = out.phi_zpf * b.cavity.lambda_opt / (constants::two_pi * coupling);
    }
    out.u_zpf = strain_to_amplitude(out.shear_strain_zpf, out.k_m);
    out.mode_area = effective_area_from_radii(b.mode_r_x, b.mode_r_z);
    out.u_zpf_theory = zero_point_amplitude(b.material, out.mode_area, f_m, depth);
    out.u_zpf_ratio = out.u_zpf / out.u_zpf_theory;
    return 0;
  });

  out.g0_prospect = stage("g0_from_modulation", [&] {
    return g0_from_modulation(out.phi_zpf, b.cavity.lambda_opt, b.prospect_cavity_length).g0_over_2pi;
  });

  out.mechanical_frequency = b.prospect_mechanical_frequency > 0.0 ? b.prospect_mechanical_frequency : f_m;
  out.kappa = b.prospect_kappa.value_or(cav.kappa);
  out.kappa_ext = b.prospect_kappa_ext.value_or(out.kappa / 2.0);
  out.detuning = b.prospect_detuning.value_or(out.mechanical_frequency);
  out.n_cav = stage("intracavity_photon_number", [&] {
    return intracavity_photon_number(b.prospect_optical_power, out.detuning, out.kappa, out.kappa_ext,
                                     b.cavity.lambda_opt);
  });
  out.cooperativity = stage("cooperativity", [&] {
    if (!(b.prospect_mechanical_q > 0.0)) throw ValidationError("mechanical Q must be positive");
    out.gamma_m = out.mechanical_frequency / b.prospect_mechanical_q;
    return cooperativity(out.n_cav, out.g0_prospect, out.gamma_m, out.kappa);
  });
  return out;
}

}  // namespace sawom
