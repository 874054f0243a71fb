#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace sawom {

// RF trace: complex S-parameter samples, or real linear power when
// `complex_values` is empty.
struct RfTrace {
  std::vector<double> frequencies;  // Hz, strictly increasing
  std::vector<std::complex<double>> complex_values;
  std::vector<double> power;

  [[nodiscard]] bool is_complex() const { return !complex_values.empty(); }
  [[nodiscard]] std::size_t size() const { return frequencies.size(); }
};

// Throws ValidationError on < 16 points, length mismatch or non-increasing frequencies.
void validate(const RfTrace& trace);

enum class LineShape { Lorentzian, Fano, Gaussian };

std::string_view to_string(LineShape shape);
LineShape parse_line_shape(std::string_view text);

struct ResonanceFit {
  LineShape model = LineShape::Lorentzian;
  double f0 = 0.0;              // Hz
  double linewidth_fwhm = 0.0;  // Hz
  double q = 0.0;               // f0 / linewidth_fwhm
  double amplitude = 0.0;       // resonant amplitude (Fano: |resonant path|)
  double background = 0.0;      // additive baseline (Fano: |direct path|)
  double fano_phase = 0.0;      // rad, Fano only
  std::complex<double> direct;  // Fano only
  double residual_rms = 0.0;
  int iterations = 0;
};

// Single-sideband power J1(phi)^2 for unit carrier. |phi| >= 1 is rejected
// ("modulation too deep for small-signal model").
[[nodiscard]] double sideband_power_fraction(double phi);

// direct + a e^{i phase} (G/2) / (i (f - f0) + G/2)
[[nodiscard]] std::complex<double> s21_fano_model(double f, double f0, double linewidth,
                                                  std::complex<double> direct, double resonant_amp,
                                                  double fano_phase);

// a / (1 + (2 (f - f0)/G)^2) + b
[[nodiscard]] double lorentzian_model(double f, double f0, double linewidth, double amplitude,
                                      double background);
// a exp(-4 ln2 (f - f0)^2 / G^2) + b, G = FWHM
[[nodiscard]] double gaussian_model(double f, double f0, double linewidth, double amplitude,
                                    double background);

// Damped least-squares fit. Complex traces support the Fano model only.
// A real trace fitted with Fano uses |direct + resonant|^2 with a real,
// nonnegative direct path.
// Throws ComputationError("no resonance found") when the peak prominence of
// the (smoothed, detrended) trace is below 3x the RMS of the detrended tails,
// and ComputationError("fit failed ...") on divergence.
ResonanceFit fit_resonance(const RfTrace& trace, LineShape model);

struct SidebandSpectrum {
  std::vector<double> drive_frequencies;
  std::vector<double> sideband_power;  // normalised to the peak
};

// power(f) = J1(phi |chi(f)|)^2, |chi| = 1/sqrt(1 + (2 q (f - f0)/f0)^2).
SidebandSpectrum sideband_spectrum(double f0, double q, const std::vector<double>& sweep,
                                   double phi_on_resonance);

// Absorbed power p_in (1 - |S11|^2) stored as E = P Q / (2 pi f0); N = E / (hbar 2 pi f0).
[[nodiscard]] double phonon_number_from_reflection(double p_in, double s11_mag, double f0, double q);

// phi_ref sqrt(p_sb / p_sb_ref)
[[nodiscard]] double phase_from_sideband_calibration(double p_sb, double p_sb_ref, double phi_ref);

}  // namespace sawom
