#include "sawom/spectra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "sawom/bessel.hpp"
#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/format.hpp"
#include "sawom/lsq.hpp"

namespace sawom {

void validate(const RfTrace& t) {
  const std::size_t n = t.frequencies.size();
  if (n < 16) throw ValidationError("trace: need at least 16 points");
  const std::size_t values = t.is_complex() ? t.complex_values.size() : t.power.size();
  if (values != n) throw ValidationError("trace: frequency and value lists differ in length");
  if (t.is_complex() && !t.power.empty()) {
    throw ValidationError("trace: supply complex values or power, not both");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t.frequencies[i] > t.frequencies[i - 1])) {
      throw ValidationError("trace: frequencies must be strictly increasing");
    }
  }
}

std::string_view to_string(LineShape shape) {
  switch (shape) {
    case LineShape::Lorentzian:
      return "lorentzian";
    case LineShape::Fano:
      return "fano";
    case LineShape::Gaussian:
      return "gaussian";
  }
  return "lorentzian";
}

LineShape parse_line_shape(std::string_view text) {
  std::string key;
  for (char c : text) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "lorentzian") return LineShape::Lorentzian;
  if (key == "fano") return LineShape::Fano;
  if (key == "gaussian") return LineShape::Gaussian;
  throw ValidationError("unknown line shape: " + std::string(text));
}

double sideband_power_fraction(double phi) {
  if (!(std::fabs(phi) < 1.0)) throw ValidationError("modulation too deep for small-signal model");
  const double j = bessel::j1(phi);
  return j * j;
}

std::complex<double> s21_fano_model(double f, double f0, double linewidth,
                                    std::complex<double> direct, double resonant_amp,
                                    double fano_phase) {
  if (!(linewidth > 0.0)) throw ValidationError("linewidth must be positive");
  const double half = linewidth / 2.0;
  return direct + std::polar(resonant_amp, fano_phase) * half / std::complex<double>(half, f - f0);
}

double lorentzian_model(double f, double f0, double linewidth, double amplitude, double background) {
  const double x = 2.0 * (f - f0) / linewidth;
  return amplitude / (1.0 + x * x) + background;
}

double gaussian_model(double f, double f0, double linewidth, double amplitude, double background) {
  const double x = (f - f0) / linewidth;
  return amplitude * std::exp(-4.0 * std::numbers::ln2 * x * x) + background;
}

namespace {

struct FeatureScan {
  std::size_t peak = 0;
  double peak_value = 0.0;  // detrended, smoothed
  double fwhm = 0.0;
  std::vector<double> trend;
  std::complex<double> direct_guess;
};

// Locate the dominant feature and enforce the prominence precondition.
FeatureScan scan_feature(const RfTrace& t, double width_level) {
  const std::size_t n = t.size();
  const std::size_t tail = std::max<std::size_t>(3, n / 10);
  FeatureScan scan;

  std::vector<double> s(n);
  if (t.is_complex()) {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < tail; ++i) acc += t.complex_values[i] + t.complex_values[n - 1 - i];
    scan.direct_guess = acc / static_cast<double>(2 * tail);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::abs(t.complex_values[i] - scan.direct_guess);
  } else {
    s = t.power;
  }

  // Straight line through the tails.
  const double f_mid = 0.5 * (t.frequencies.front() + t.frequencies.back());
  const double f_span = t.frequencies.back() - t.frequencies.front();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::size_t> tails;
  for (std::size_t i = 0; i < tail; ++i) {
    tails.push_back(i);
    tails.push_back(n - 1 - i);
  }
  for (std::size_t i : tails) {
    const double x = (t.frequencies[i] - f_mid) / f_span;
    sx += x;
    sy += s[i];
    sxx += x * x;
    sxy += x * s[i];
  }
  const double m = static_cast<double>(tails.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / m;
  scan.trend.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    scan.trend[i] = icpt + slope * (t.frequencies[i] - f_mid) / f_span;
  }
  double tail_ss = 0.0;
  for (std::size_t i : tails) tail_ss += (s[i] - scan.trend[i]) * (s[i] - scan.trend[i]);
  const double tail_rms = std::sqrt(tail_ss / m);

  const std::size_t half_window = std::max<std::size_t>(1, n / 256);
  std::vector<double> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half_window ? i - half_window : 0;
    const std::size_t hi = std::min(n - 1, i + half_window);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += s[j] - scan.trend[j];
    smooth[i] = acc / static_cast<double>(hi - lo + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(smooth[i]) > std::fabs(scan.peak_value)) {
      scan.peak_value = smooth[i];
      scan.peak = i;
    }
  }
  const double prominence = std::fabs(scan.peak_value);
  if (!(prominence > 0.0) || prominence < 3.0 * tail_rms) {
    throw ComputationError("no resonance found (prominence " + fmt::shortest(prominence) +
                           ", tail rms " + fmt::shortest(tail_rms) + ")");
  }

  const double level = prominence * width_level;
  auto crossing = [&](int dir) {
    std::size_t i = scan.peak;
    while (true) {
      if ((dir < 0 && i == 0) || (dir > 0 && i == n - 1)) return t.frequencies[i];
      const std::size_t j = dir < 0 ? i - 1 : i + 1;
      const double a = std::fabs(smooth[i]);
      const double b = std::fabs(smooth[j]);
      if (b < level) {
        const double frac = (a - level) / (a - b);
        return t.frequencies[i] + frac * (t.frequencies[j] - t.frequencies[i]);
      }
      i = j;
    }
  };
  scan.fwhm = crossing(+1) - crossing(-1);
  if (!(scan.fwhm > 0.0)) scan.fwhm = f_span / 4.0;
  return scan;
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, constants::two_pi);
  return phi <= -constants::pi ? phi + constants::two_pi : phi;
}

[[noreturn]] void fit_failed(const lsq::Result& r) {
  throw ComputationError("fit failed after " + std::to_string(r.iterations) +
                         " iterations, residual rms " + fmt::shortest(r.residual_rms));
}

}  // namespace

ResonanceFit fit_resonance(const RfTrace& t, LineShape model) {
  validate(t);
  if (t.is_complex() && model != LineShape::Fano) {
    throw ValidationError("complex traces are fitted with the fano model only");
  }
  const std::size_t n = t.size();
  const auto& f = t.frequencies;
  ResonanceFit fit;
  fit.model = model;

  lsq::Problem pb;
  lsq::Result res;

  if (model != LineShape::Fano) {
    const FeatureScan scan = scan_feature(t, 0.5);
    const double g0 = scan.fwhm;
    const double a0 = scan.peak_value;
    pb.n_residuals = static_cast<Eigen::Index>(n);
    pb.initial = Eigen::Vector4d(f[scan.peak], g0, a0, scan.trend[scan.peak]);
    pb.scale = Eigen::Vector4d(g0, g0, std::fabs(a0), std::fabs(a0));
    const bool lorentz = model == LineShape::Lorentzian;
    pb.residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
      for (std::size_t i = 0; i < n; ++i) {
        const double y = lorentz ? lorentzian_model(f[i], p[0], p[1], p[2], p[3])
                                 : gaussian_model(f[i], p[0], p[1], p[2], p[3]);
        r[static_cast<Eigen::Index>(i)] = y - t.power[i];
      }
    };
    res = lsq::levenberg_marquardt(pb);
    if (!res.converged) fit_failed(res);
    fit.f0 = res.params[0];
    fit.linewidth_fwhm = std::fabs(res.params[1]);
    fit.amplitude = res.params[2];
    fit.background = res.params[3];
  } else if (t.is_complex()) {
    // |resonant term| falls to 1/sqrt(2) of its peak at f0 +- G/2.
    const FeatureScan scan = scan_feature(t, std::numbers::sqrt2 / 2.0);
    const double g0 = scan.fwhm;
    const std::complex<double> res_pk = t.complex_values[scan.peak] - scan.direct_guess;
    const double a0 = std::abs(res_pk);
    Eigen::VectorXd init(6);
    init << f[scan.peak], g0, a0, std::arg(res_pk), scan.direct_guess.real(), scan.direct_guess.imag();
    Eigen::VectorXd scale(6);
    scale << g0, g0, a0, 1.0, a0, a0;
    pb.n_residuals = static_cast<Eigen::Index>(2 * n);
    pb.initial = init;
    pb.scale = scale;
    pb.residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
      const std::complex<double> d(p[4], p[5]);
      const double half = std::fabs(p[1]) / 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto y = d + std::polar(p[2], p[3]) * half / std::complex<double>(half, f[i] - p[0]);
        const auto e = y - t.complex_values[i];
        r[static_cast<Eigen::Index>(2 * i)] = e.real();
        r[static_cast<Eigen::Index>(2 * i + 1)] = e.imag();
      }
    };
    res = lsq::levenberg_marquardt(pb);
    if (!res.converged) fit_failed(res);
    fit.f0 = res.params[0];
    fit.linewidth_fwhm = std::fabs(res.params[1]);
    fit.amplitude = res.params[2];
    fit.fano_phase = res.params[3];
    fit.direct = {res.params[4], res.params[5]};
  } else {
    const FeatureScan scan = scan_feature(t, 0.5);
    const double g0 = scan.fwhm;
    const double d0 = std::sqrt(std::max(scan.trend[scan.peak], 0.0));
    const double y_pk = std::sqrt(std::max(t.power[scan.peak], 0.0));
    const double phase0 = y_pk >= d0 ? 0.0 : constants::pi;
    const double a0 = std::max(std::fabs(y_pk - d0), 1e-6 * (y_pk + d0));
    Eigen::VectorXd init(5);
    init << f[scan.peak], g0, a0, phase0, d0;
    Eigen::VectorXd scale(5);
    scale << g0, g0, a0, 1.0, std::max(d0, a0);
    pb.n_residuals = static_cast<Eigen::Index>(n);
    pb.initial = init;
    pb.scale = scale;
    pb.residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
      const double half = std::fabs(p[1]) / 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto y = p[4] + std::polar(p[2], p[3]) * half / std::complex<double>(half, f[i] - p[0]);
        r[static_cast<Eigen::Index>(i)] = std::norm(y) - t.power[i];
      }
    };
    res = lsq::levenberg_marquardt(pb);
    if (!res.converged) fit_failed(res);
    fit.f0 = res.params[0];
    fit.linewidth_fwhm = std::fabs(res.params[1]);
    fit.amplitude = res.params[2];
    fit.fano_phase = res.params[3];
    fit.direct = {res.params[4], 0.0};
  }

  if (model == LineShape::Fano) {
    // The model uses |G|; fold the amplitude sign into the phase.
    if (fit.amplitude < 0.0) {
      fit.amplitude = -fit.amplitude;
      fit.fano_phase += constants::pi;
    }
    fit.fano_phase = wrap_phase(fit.fano_phase);
    fit.background = std::abs(fit.direct);
  }
  if (!(fit.linewidth_fwhm > 0.0) || !std::isfinite(fit.f0)) fit_failed(res);
  fit.q = fit.f0 / fit.linewidth_fwhm;
  fit.residual_rms = res.residual_rms;
  fit.iterations = res.iterations;
  return fit;
}

SidebandSpectrum sideband_spectrum(double f0, double q, const std::vector<double>& sweep,
                                   double phi_on_resonance) {
  if (!(f0 > 0.0) || !(q > 0.0)) throw ValidationError("sideband spectrum: f0 and q must be positive");
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i] > sweep[i - 1])) throw ValidationError("sideband spectrum: sweep must increase");
  }
  SidebandSpectrum s;
  s.drive_frequencies = sweep;
  s.sideband_power.resize(sweep.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const double x = 2.0 * q * (sweep[i] - f0) / f0;
    const double chi = 1.0 / std::sqrt(1.0 + x * x);
    s.sideband_power[i] = sideband_power_fraction(phi_on_resonance * chi);
    peak = std::max(peak, s.sideband_power[i]);
  }
  if (peak > 0.0) {
    for (double& p : s.sideband_power) p /= peak;
  }
  return s;
}

double phonon_number_from_reflection(double p_in, double s11_mag, double f0, double q) {
  if (s11_mag > 1.0) throw ValidationError("nonphysical reflection");
  if (!(s11_mag >= 0.0) || !(p_in > 0.0) || !(f0 > 0.0) || !(q > 0.0)) {
    throw ValidationError("phonon number: inputs must be positive");
  }
  const double omega = constants::two_pi * f0;
  const double absorbed = p_in * (1.0 - s11_mag * s11_mag);
  const double energy = absorbed * q / omega;
  return energy / (constants::hbar * omega);
}

double phase_from_sideband_calibration(double p_sb, double p_sb_ref, double phi_ref) {
  if (!(p_sb > 0.0) || !(p_sb_ref > 0.0) || !(phi_ref > 0.0)) {
    throw ValidationError("sideband calibration: inputs must be positive");
  }
  return phi_ref * std::sqrt(p_sb / p_sb_ref);
}

}  // namespace sawom
