#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sawom/materials.hpp"

namespace sawom {

// Symmetric Fabry-Perot cavity with identical mirrors.
struct CavityParams {
  double length = 50e-3;          // m
  double mirror_roc = 25e-3;      // m
  double reflectivity = 0.995;    // per mirror
  double lambda_opt = 1064e-9;    // m
  std::optional<double> kappa_measured;  // Hz FWHM, overrides the finesse estimate
};

void validate(const CavityParams& p);

struct CavityDerived {
  double fsr = 0.0;            // Hz
  double finesse = 0.0;
  double kappa_derived = 0.0;  // fsr / finesse, Hz
  double kappa = 0.0;          // kappa_measured if supplied, else kappa_derived
  double g = 0.0;              // 1 - L / R
  bool stable = false;         // 0 <= g^2 < 1
  std::optional<double> waist; // m, only for stable cavities
};

CavityDerived cavity_derived_params(const CavityParams& p);

// phi_saw / sqrt(n_saw). n_saw == 0 -> ValidationError("empty resonator calibration").
[[nodiscard]] double zero_point_phase(double phi_saw, double n_saw);

struct CouplingRate {
  double g0_over_2pi = 0.0;  // Hz
  double delta_x = 0.0;      // m, (phi_zpf / 2 pi) lambda_opt
};

// g0 / 2 pi = (c / lambda_opt) delta_x / L
CouplingRate g0_from_modulation(double phi_zpf, double lambda_opt, double cavity_length);

// 1 / (1 + (2 delta / kappa)^2) for each detuning.
std::vector<double> antistokes_response(const std::vector<double>& detunings, double kappa);

// Steady-state intracavity photons for a one-sided drive:
//   n = (P / hbar w) kappa_ext / ((kappa/2)^2 + Delta^2), rates angular.
// All rate arguments are ordinary frequencies (Hz).
[[nodiscard]] double intracavity_photon_number(double p_in, double detuning, double kappa,
                                               double kappa_ext, double lambda_opt);

// 4 n g0^2 / (gamma_m kappa); the 2 pi factors cancel.
[[nodiscard]] double cooperativity(double n, double g0, double gamma_m, double kappa);

// Everything coupling_budget needs.
struct CalibrationBundle {
  MaterialProperties material;
  double lambda_saw = 40e-6;
  // Phonon number from the S11 measurement.
  double rf_power = 0.0;   // W
  double s11_mag = 0.0;
  double f0 = 0.0;         // Hz, SAW resonance
  double q = 0.0;
  // Optical phase from comparison with a calibrated modulator.
  double sideband_power = 0.0;            // W
  double reference_sideband_power = 0.0;  // W
  double reference_phase = 0.0;           // rad
  // Measured zero-point shear strain du_y/dz; when absent it is derived
  // from phi_zpf through the p14 shear term over the decay depth.
  std::optional<double> shear_strain_zpf;
  // Theory branch of U_zpf.
  double mode_r_x = 100e-6;
  double mode_r_z = 110e-6;
  double decay_depth = 0.0;  // <= 0 selects lambda_saw / (2 pi)
  CavityParams cavity;
  // Prospect scenario.
  double prospect_cavity_length = 300e-6;
  double prospect_optical_power = 10e-3;    // W
  double prospect_mechanical_frequency = 0.0;  // Hz, <= 0 selects f0
  double prospect_mechanical_q = 1e5;
  std::optional<double> prospect_detuning;  // Hz, default mechanical frequency
  std::optional<double> prospect_kappa;     // Hz, default cavity kappa
  std::optional<double> prospect_kappa_ext; // Hz, default kappa / 2
};

struct CouplingBudget {
  double n_saw = 0.0;
  double phi_saw = 0.0;
  double phi_zpf = 0.0;
  double delta_x = 0.0;       // m
  double g0 = 0.0;            // Hz, g0/2pi in the measured cavity
  double k_m = 0.0;           // 1/m
  double shear_strain_zpf = 0.0;
  bool shear_strain_measured = false;
  double u_zpf = 0.0;         // m, from the shear strain
  double u_zpf_theory = 0.0;  // m, from the effective mass
  double u_zpf_ratio = 0.0;   // u_zpf / u_zpf_theory
  double mode_area = 0.0;     // m^2
  double cavity_kappa_derived = 0.0;  // Hz
  double cavity_kappa = 0.0;          // Hz
  double g0_prospect = 0.0;   // Hz, g0/2pi rescaled to the prospect cavity length
  double n_cav = 0.0;
  double mechanical_frequency = 0.0;  // Hz
  double gamma_m = 0.0;       // Hz FWHM
  double kappa = 0.0;         // Hz FWHM used for the prospect
  double kappa_ext = 0.0;
  double detuning = 0.0;
  double cooperativity = 0.0;
};

// Chain: phonon number -> phase calibration -> zero-point phase -> g0 ->
// shear strain / U_zpf -> intracavity photons -> cooperativity.
// Stage errors are rethrown with the stage name prefixed.
CouplingBudget coupling_budget(const CalibrationBundle& bundle);

}  // namespace sawom
