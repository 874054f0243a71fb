#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sawom/acoustics.hpp"
#include "sawom/cavity.hpp"
#include "sawom/layout.hpp"
#include "sawom/materials.hpp"
#include "sawom/spectra.hpp"

namespace sawom::cli {

struct OpticsSection {
  double lambda_opt = 1064e-9;
  double beam_waist = 3.5e-6;
  std::optional<double> spot_x;  // default: first displacement node along Z
  std::optional<double> spot_z;
};

struct CalibrationSection {
  double rf_power = 0.0;
  double s11_mag = 0.0;
  double f0 = 0.0;
  double q = 0.0;
  double sideband_power = 0.0;
  double reference_sideband_power = 0.0;
  double reference_phase = 0.0;
  std::optional<double> shear_strain_zpf;
};

struct ProspectSection {
  double cavity_length = 300e-6;
  double optical_power = 10e-3;
  double mechanical_frequency = 0.0;  // <= 0 selects the calibration f0
  double mechanical_q = 1e5;
  std::optional<double> detuning;
  std::optional<double> kappa;
  std::optional<double> kappa_ext;
};

// Synthetic trace unless trace_csv names a file (relative to the config).
struct SpectrumSection {
  LineShape model = LineShape::Fano;
  double f0 = 86.4e6;
  double linewidth = 1.7e6;
  double amplitude = 0.5;
  double background = 0.3;
  double fano_phase = 0.8;
  double half_span = 0.0;  // <= 0 selects 8 linewidths
  std::size_t points = 801;
  double noise = 0.0;      // additive, relative to the amplitude
  bool complex_trace = true;
  double sideband_phi = 0.05;  // rad, for the drive-frequency sweep
  std::optional<std::filesystem::path> trace_csv;
};

struct OutputSection {
  std::filesystem::path directory = "out";
  std::vector<std::string> formats = {"csv", "json", "svg"};
};

struct RunConfig {
  std::set<std::string> sections;
  std::filesystem::path base_dir = ".";
  MaterialProperties material = material_for_cut(CutLabel::YCut);
  LayoutSpec layout;
  ModeSpec mode;  // mode.lambda_saw follows layout.lambda_saw
  OpticsSection optics;
  CavityParams cavity;  // cavity.lambda_opt follows optics.lambda_opt
  CalibrationSection calibration;
  ProspectSection prospect;
  SpectrumSection spectrum;
  OutputSection output;

  [[nodiscard]] bool has(std::string_view section) const { return sections.contains(std::string(section)); }
};

// Field-level errors are collected and thrown together as one ValidationError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// Throws ValidationError("missing required section [s] for <subcommand>").
void require_sections(const RunConfig& config, std::string_view subcommand);

CalibrationBundle calibration_bundle(const RunConfig& config);

// Canonical resolved view, used for structural comparison and reporting.
nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace sawom::cli
