#include "dispatch.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sawom/acoustics.hpp"
#include "sawom/cavity.hpp"
#include "sawom/constants.hpp"
#include "sawom/errors.hpp"
#include "sawom/format.hpp"
#include "sawom/layout.hpp"
#include "sawom/optoelastics.hpp"
#include "sawom/spectra.hpp"

#ifndef SAWOM_VERSION
#define SAWOM_VERSION "0.0.0"
#endif

namespace sawom::cli {

namespace {

using json = nlohmann::ordered_json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

class Run {
 public:
  Run(const RunConfig& config, const DispatchOptions& options, std::vector<std::string> formats)
      : c_(config), opt_(options), formats_(std::move(formats)) {}

  [[nodiscard]] bool wants(std::string_view format) const {
    return std::find(formats_.begin(), formats_.end(), format) != formats_.end();
  }

  // content is only built when the artifact's format was requested.
  void emit(std::string name, std::string_view format, const std::function<std::string()>& content) {
    if (wants(format)) out_.push_back({std::move(name), content()});
  }

  std::vector<Artifact> take() { return std::move(out_); }

  const ModeField& mode() {
    if (!mode_) mode_ = synthesize_mode_field(c_.mode, opt_.threads);
    return *mode_;
  }

  void material();
  void layout();
  void modemap();
  void phasemap();
  void selectivity();
  void spectrum();
  void cavity();
  void budget();

 private:
  const RunConfig& c_;
  const DispatchOptions& opt_;
  std::vector<std::string> formats_;
  std::vector<Artifact> out_;
  std::optional<ModeField> mode_;
};

void Run::material() {
  const auto& m = c_.material;
  const double f = resonance_frequency(m, c_.layout.lambda_saw);
  emit("material.json", "json", [&] {
    json terms = json::array();
    for (const auto& t : m.anisotropy.terms()) terms.push_back({{"harmonic", t.harmonic}, {"amplitude", t.amplitude}});
    return dump({{"name", m.name},
                 {"cut", std::string(to_string(m.cut))},
                 {"v_saw_mps", m.v_saw},
                 {"density_kgm3", m.density},
                 {"n_e", m.n_e},
                 {"n_o", m.n_o},
                 {"optoelastic",
                  {{"p11", m.tensor.p11},
                   {"p12", m.tensor.p12},
                   {"p13", m.tensor.p13},
                   {"p14", m.tensor.p14},
                   {"p31", m.tensor.p31},
                   {"p33", m.tensor.p33},
                   {"p41", m.tensor.p41},
                   {"p44", m.tensor.p44}}},
                 {"anisotropy_terms", terms},
                 {"lambda_saw_m", c_.layout.lambda_saw},
                 {"resonance_frequency_hz", f}});
  });
  emit("material_velocity.csv", "csv", [&] {
    std::vector<double> theta(360), v(360);
    for (std::size_t i = 0; i < 360; ++i) {
      theta[i] = constants::two_pi * static_cast<double>(i) / 360.0;
      v[i] = group_velocity(m.anisotropy, theta[i]);
    }
    return table_csv({"theta_rad", "v_mps"}, {theta, v});
  });
}

void Run::layout() {
  const ResonatorGeometry g = generate_focusing_circuit(c_.material, c_.layout);
  validate_geometry(g);
  emit("layout.svg", "svg", [&] { return export_geometry(g, GeometryFormat::Svg); });
  emit("layout.csv", "csv", [&] { return export_geometry(g, GeometryFormat::Csv); });
  emit("layout.json", "json", [&] {
    const ModeArea area = bessel_mode_area(g.r_eff, g.lambda_saw);
    const double measured = effective_area_from_radii(c_.mode.r_x, c_.mode.r_z);
    const double flat = constants::pi * g.r_eff * g.r_eff;
    return dump({{"material", c_.material.name},
                 {"lambda_saw_m", g.lambda_saw},
                 {"resonance_frequency_hz", resonance_frequency(c_.material, g.lambda_saw)},
                 {"idt_pairs", g.idt_pairs},
                 {"mirror_pairs", g.mirror_pairs},
                 {"electrode_width_m", g.electrode_width},
                 {"electrode_gap_m", g.electrode_gap},
                 {"contours", g.contours.size()},
                 {"r_eff_m", g.r_eff},
                 {"bessel_mode",
                  {{"n_nodes", area.n_nodes},
                   {"area_exact_m2", area.a_exact},
                   {"area_asymptotic_m2", area.a_asymptotic},
                   {"eta", area.eta},
                   {"focusing_gain", focusing_gain(area)}}},
                 {"measured_mode",
                  {{"r_x_m", c_.mode.r_x},
                   {"r_z_m", c_.mode.r_z},
                   {"area_m2", measured},
                   {"flat_area_ratio", flat / measured}}}});
  });
}

void Run::modemap() {
  const ModeField& m = mode();
  emit("modemap.csv", "csv", [&] { return field_csv(m.u.grid, {"u_m"}, {&m.u.values}); });
  emit("modemap.svg", "svg", [&] { return heatmap_svg(m.u, {"Displacement amplitude U(x, z)", "m"}); });
  emit("modemap.json", "json", [&] {
    const Field2D mag = magnitude(m.u);
    return dump({{"u0_m", m.u0},
                 {"lambda_saw_m", m.lambda_saw},
                 {"k_m_per_m", m.k_m},
                 {"decay_depth_m", m.decay_depth},
                 {"target_radius_x_m", m.r_x},
                 {"target_radius_z_m", m.r_z},
                 {"fitted_radius_x_m", fit_mode_radius(mag, Axis::X)},
                 {"fitted_radius_z_m", fit_mode_radius(mag, Axis::Z)},
                 {"envelope_x_m", m.envelope_x},
                 {"envelope_z_m", m.envelope_z},
                 {"first_node_x_m", first_node(m, Axis::X)},
                 {"first_node_z_m", first_node(m, Axis::Z)},
                 {"grid_points", m.u.grid.points()},
                 {"grid_spacing_m", m.u.grid.spacing()}});
  });
}

void Run::phasemap() {
  const ModeField& m = mode();
  json summary;
  for (Polarization pol : {Polarization::X, Polarization::Z}) {
    const PhaseMap map = integrated_phase_map(m, c_.material, pol, c_.optics.lambda_opt, opt_.threads);
    const Field2D power = sideband_power_map(map);
    const std::string tag = pol == Polarization::X ? "x" : "z";
    emit("phasemap_" + tag + ".csv", "csv",
         [&] { return field_csv(map.phi.grid, {"phi_rad", "sideband_power_norm"}, {&map.phi.values, &power.values}); });
    emit("phasemap_" + tag + ".svg", "svg", [&] {
      return heatmap_svg(power, {std::string("Normalised sideband power, ") + std::string(to_string(pol)) +
                                     "-polarised probe",
                                 "(norm.)"});
    });
    if (wants("json")) {
      const auto [lo, hi] = std::minmax_element(map.phi.values.begin(), map.phi.values.end());
      const Field2D mag = magnitude(map.phi);
      summary[std::string(to_string(pol))] = {{"phi_min_rad", *lo},
                                              {"phi_max_rad", *hi},
                                              {"argmax_along_x_m", axis_argmax(power, Axis::X)},
                                              {"argmax_along_z_m", axis_argmax(power, Axis::Z)},
                                              {"fitted_radius_x_m", fit_mode_radius(mag, Axis::X)},
                                              {"fitted_radius_z_m", fit_mode_radius(mag, Axis::Z)}};
    }
  }
  emit("phasemap.json", "json", [&] {
    summary["lambda_opt_m"] = c_.optics.lambda_opt;
    summary["first_node_z_m"] = first_node(m, Axis::Z);
    return dump(summary);
  });
}

void Run::selectivity() {
  const ModeField& m = mode();
  const double node = first_node(m, Axis::Z);
  const BeamSpot spot{c_.optics.spot_x.value_or(0.0), c_.optics.spot_z.value_or(node), c_.optics.beam_waist};
  const BeamSpot centre{0.0, 0.0, c_.optics.beam_waist};
  const Selectivity at_spot = polarization_selectivity(m, c_.material, spot, c_.optics.lambda_opt);
  const Selectivity at_centre = polarization_selectivity(m, c_.material, centre, c_.optics.lambda_opt);

  const auto report = [](const BeamSpot& s, const Selectivity& r) {
    return json{{"x_m", s.x},
                {"z_m", s.z},
                {"waist_m", s.waist},
                {"phi_x_rad", r.phi_x},
                {"phi_z_rad", r.phi_z},
                {"power_ratio_x_over_z", r.infinite ? json(nullptr) : json(r.ratio)},
                {"infinite", r.infinite}};
  };
  emit("selectivity.json", "json", [&] {
    return dump({{"first_node_z_m", node}, {"spot", report(spot, at_spot)}, {"centre", report(centre, at_centre)}});
  });

  if (!wants("csv") && !wants("svg")) return;
  const PhaseMap xm = integrated_phase_map(m, c_.material, Polarization::X, c_.optics.lambda_opt, opt_.threads);
  const PhaseMap zm = integrated_phase_map(m, c_.material, Polarization::Z, c_.optics.lambda_opt, opt_.threads);
  const Grid2D& grid = m.u.grid;
  std::vector<double> z, px, pz;
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const double zi = grid.coordinate(i);
    if (std::fabs(zi) > 3.0 * node) continue;
    const BeamSpot s{spot.x, zi, spot.waist};
    z.push_back(zi);
    px.push_back(beam_sampled_phase(xm, s));
    pz.push_back(beam_sampled_phase(zm, s));
  }
  emit("selectivity.csv", "csv", [&] { return table_csv({"z_m", "phi_x_rad", "phi_z_rad"}, {z, px, pz}); });
  emit("selectivity.svg", "svg", [&] {
    return line_plot_svg(z, {{"|phi| X-polarised", px}, {"|phi| Z-polarised", pz}},
                         "Beam-sampled phase modulation along z", "z (m)");
  });
}

RfTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read trace: " + path.string());
  std::string line;
  std::getline(in, line);
  const bool complex_trace = line == "frequency_hz,re,im";
  if (!complex_trace && line != "frequency_hz,power") {
    throw ValidationError("trace header must be 'frequency_hz,power' or 'frequency_hz,re,im'");
  }
  RfTrace t;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      double x = 0.0;
      auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc() || end != cell.data() + cell.size()) {
        throw ValidationError("trace row " + std::to_string(row) + ": non-numeric value '" + cell + "'");
      }
      v.push_back(x);
    }
    if (v.size() != (complex_trace ? 3u : 2u)) {
      throw ValidationError("trace row " + std::to_string(row) + ": wrong column count");
    }
    t.frequencies.push_back(v[0]);
    if (complex_trace) {
      t.complex_values.emplace_back(v[1], v[2]);
    } else {
      t.power.push_back(v[1]);
    }
  }
  return t;
}

RfTrace synthetic_trace(const SpectrumSection& s, std::uint64_t seed) {
  if (s.points < 16) throw ValidationError("spectrum.points must be at least 16");
  const double half = s.half_span > 0.0 ? s.half_span : 8.0 * s.linewidth;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, s.noise * std::fabs(s.amplitude));
  const auto draw = [&] { return s.noise > 0.0 ? noise(rng) : 0.0; };
  RfTrace t;
  const bool complex_trace = s.complex_trace && s.model == LineShape::Fano;
  for (std::size_t i = 0; i < s.points; ++i) {
    const double f = s.f0 - half + 2.0 * half * static_cast<double>(i) / static_cast<double>(s.points - 1);
    t.frequencies.push_back(f);
    switch (s.model) {
      case LineShape::Lorentzian:
        t.power.push_back(lorentzian_model(f, s.f0, s.linewidth, s.amplitude, s.background) + draw());
        break;
      case LineShape::Gaussian:
        t.power.push_back(gaussian_model(f, s.f0, s.linewidth, s.amplitude, s.background) + draw());
        break;
      case LineShape::Fano: {
        const auto y = s21_fano_model(f, s.f0, s.linewidth, {s.background, 0.0}, s.amplitude, s.fano_phase);
        if (complex_trace) {
          const double re = draw();
          const double im = draw();
          t.complex_values.push_back(y + std::complex<double>(re, im));
        } else {
          t.power.push_back(std::norm(y) + draw());
        }
        break;
      }
    }
  }
  return t;
}

double fitted_power(const ResonanceFit& r, double f) {
  switch (r.model) {
    case LineShape::Lorentzian:
      return lorentzian_model(f, r.f0, r.linewidth_fwhm, r.amplitude, r.background);
    case LineShape::Gaussian:
      return gaussian_model(f, r.f0, r.linewidth_fwhm, r.amplitude, r.background);
    case LineShape::Fano:
      return std::norm(s21_fano_model(f, r.f0, r.linewidth_fwhm, r.direct, r.amplitude, r.fano_phase));
  }
  return 0.0;
}

void Run::spectrum() {
  const SpectrumSection& s = c_.spectrum;
  const RfTrace trace = s.trace_csv ? read_trace_csv(c_.base_dir / *s.trace_csv) : synthetic_trace(s, opt_.seed);
  const ResonanceFit fit = fit_resonance(trace, s.model);

  std::vector<double> measured(trace.size()), model(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    measured[i] = trace.is_complex() ? std::norm(trace.complex_values[i]) : trace.power[i];
    model[i] = fitted_power(fit, trace.frequencies[i]);
  }

  emit("spectrum.json", "json", [&] {
    return dump({{"source", s.trace_csv ? "file" : "synthetic"},
                 {"model", std::string(to_string(fit.model))},
                 {"f0_hz", fit.f0},
                 {"linewidth_fwhm_hz", fit.linewidth_fwhm},
                 {"q", fit.q},
                 {"amplitude", fit.amplitude},
                 {"background", fit.background},
                 {"fano_phase_rad", fit.fano_phase},
                 {"direct_re", fit.direct.real()},
                 {"direct_im", fit.direct.imag()},
                 {"residual_rms", fit.residual_rms},
                 {"iterations", fit.iterations},
                 {"sideband_phi_rad", s.sideband_phi}});
  });
  emit("spectrum_trace.csv", "csv",
       [&] { return table_csv({"frequency_hz", "power", "fit_power"}, {trace.frequencies, measured, model}); });
  emit("spectrum.svg", "svg", [&] {
    return line_plot_svg(trace.frequencies, {{"trace", measured}, {"fit", model}},
                         "RF response and " + std::string(to_string(fit.model)) + " fit", "frequency (Hz)");
  });
  if (wants("csv")) {
    const SidebandSpectrum sb = sideband_spectrum(fit.f0, fit.q, trace.frequencies, s.sideband_phi);
    emit("sideband_sweep.csv", "csv", [&] {
      return table_csv({"drive_frequency_hz", "sideband_power_norm"}, {sb.drive_frequencies, sb.sideband_power});
    });
  }
}

void Run::cavity() {
  const CavityDerived d = cavity_derived_params(c_.cavity);
  std::vector<double> detuning(401);
  for (std::size_t i = 0; i < detuning.size(); ++i) {
    detuning[i] = d.kappa * (-5.0 + 10.0 * static_cast<double>(i) / 400.0);
  }
  const std::vector<double> response = antistokes_response(detuning, d.kappa);
  RfTrace trace;
  trace.frequencies = detuning;
  trace.power = response;
  const ResonanceFit fit = fit_resonance(trace, LineShape::Lorentzian);

  emit("cavity.json", "json", [&] {
    return dump({{"length_m", c_.cavity.length},
                 {"mirror_roc_m", c_.cavity.mirror_roc},
                 {"reflectivity", c_.cavity.reflectivity},
                 {"lambda_opt_m", c_.cavity.lambda_opt},
                 {"fsr_hz", d.fsr},
                 {"finesse", d.finesse},
                 {"kappa_derived_hz", d.kappa_derived},
                 {"kappa_measured_hz", optional_number(c_.cavity.kappa_measured)},
                 {"kappa_hz", d.kappa},
                 {"stability_g", d.g},
                 {"stable", d.stable},
                 {"waist_m", optional_number(d.waist)},
                 {"antistokes_fit_fwhm_hz", fit.linewidth_fwhm}});
  });
  emit("antistokes.csv", "csv", [&] { return table_csv({"detuning_hz", "response"}, {detuning, response}); });
  emit("antistokes.svg", "svg",
       [&] { return line_plot_svg(detuning, {{"anti-Stokes", response}}, "Cavity-enhanced anti-Stokes response",
                                  "detuning (Hz)"); });
}

constexpr std::string_view kCooperativityNote =
    "C = 4 n g0^2 / (gamma kappa) with one-sided drive, kappa_ext = kappa/2 unless set, and detuning equal to the "
    "mechanical frequency unless set. The C ~ 1 prospect is quoted without detuning, external coupling or photon "
    "number, so a value near 0.18 under these conventions is a convention gap, not an error.";

void Run::budget() {
  const CalibrationBundle bundle = calibration_bundle(c_);
  const CouplingBudget b = coupling_budget(bundle);
  emit("budget.json", "json", [&] {
    return dump({{"material", c_.material.name},
                 {"calibration",
                  {{"n_saw", b.n_saw},
                   {"phi_saw_rad", b.phi_saw},
                   {"phi_zpf_rad", b.phi_zpf},
                   {"delta_x_m", b.delta_x},
                   {"cavity_length_m", c_.cavity.length},
                   {"g0_over_2pi_hz", b.g0},
                   {"cavity_kappa_derived_hz", b.cavity_kappa_derived},
                   {"cavity_kappa_hz", b.cavity_kappa}}},
                 {"zero_point",
                  {{"k_m_per_m", b.k_m},
                   {"shear_strain_zpf", b.shear_strain_zpf},
                   {"shear_strain_source", b.shear_strain_measured ? "measured" : "derived"},
                   {"u_zpf_m", b.u_zpf},
                   {"mode_area_m2", b.mode_area},
                   {"u_zpf_theory_m", b.u_zpf_theory},
                   {"u_zpf_ratio", b.u_zpf_ratio}}},
                 {"prospect",
                  {{"cavity_length_m", bundle.prospect_cavity_length},
                   {"g0_over_2pi_hz", b.g0_prospect},
                   {"optical_power_w", bundle.prospect_optical_power},
                   {"detuning_hz", b.detuning},
                   {"kappa_hz", b.kappa},
                   {"kappa_ext_hz", b.kappa_ext},
                   {"n_cav", b.n_cav},
                   {"mechanical_frequency_hz", b.mechanical_frequency},
                   {"mechanical_q", bundle.prospect_mechanical_q},
                   {"gamma_m_hz", b.gamma_m},
                   {"cooperativity", b.cooperativity},
                   {"cooperativity_note", kCooperativityNote}}}});
  });
  emit("budget.csv", "csv", [&] {
    std::string out = "quantity,value,unit\n";
    const auto row = [&](std::string_view q, double v, std::string_view unit) {
      out += std::string(q) + "," + fmt::shortest(v) + "," + std::string(unit) + "\n";
    };
    row("n_saw", b.n_saw, "phonons");
    row("phi_saw", b.phi_saw, "rad");
    row("phi_zpf", b.phi_zpf, "rad");
    row("delta_x", b.delta_x, "m");
    row("g0_over_2pi", b.g0, "Hz");
    row("shear_strain_zpf", b.shear_strain_zpf, "1");
    row("u_zpf", b.u_zpf, "m");
    row("u_zpf_theory", b.u_zpf_theory, "m");
    row("u_zpf_ratio", b.u_zpf_ratio, "1");
    row("g0_over_2pi_prospect", b.g0_prospect, "Hz");
    row("n_cav", b.n_cav, "photons");
    row("gamma_m", b.gamma_m, "Hz");
    row("kappa", b.kappa, "Hz");
    row("cooperativity", b.cooperativity, "1");
    return out;
  });
}

std::vector<std::string> resolve_formats(const RunConfig& config, const DispatchOptions& options) {
  std::vector<std::string> f = options.formats.empty() ? config.output.formats : options.formats;
  for (const auto& x : f) {
    if (x != "csv" && x != "json" && x != "svg") throw ValidationError("unknown format '" + x + "'");
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace

std::vector<Artifact> run_subcommand(std::string_view sub, const RunConfig& config, const DispatchOptions& options) {
  require_sections(config, sub);
  Run run(config, options, resolve_formats(config, options));
  const bool all = sub == "all";
  if (all || sub == "material") run.material();
  if (all || sub == "layout") run.layout();
  if (all || sub == "modemap") run.modemap();
  if (all || sub == "phasemap") run.phasemap();
  if (all || sub == "selectivity") run.selectivity();
  if (all || sub == "spectrum") run.spectrum();
  if (all || sub == "cavity") run.cavity();
  if (all || sub == "budget") run.budget();
  return run.take();
}

std::string manifest_json(std::string_view sub, const DispatchOptions& options, const std::vector<std::string>& formats,
                          const std::vector<Artifact>& artifacts) {
  json list = json::array();
  for (const auto& a : artifacts) {
    list.push_back({{"path", a.name}, {"bytes", a.content.size()}, {"sha256", sha256_hex(a.content)}});
  }
  return dump({{"tool", "sawom"},
               {"version", SAWOM_VERSION},
               {"subcommand", sub},
               {"config_sha256", sha256_hex(options.config_bytes)},
               {"seed", options.seed},
               {"formats", formats},
               {"artifacts", list}});
}

int dispatch(std::string_view sub, const RunConfig& config, const DispatchOptions& options, std::ostream& err) {
  try {
    const auto formats = resolve_formats(config, options);
    const auto artifacts = run_subcommand(sub, config, options);
    const std::filesystem::path dir = options.out_dir.empty() ? config.output.directory : options.out_dir;
    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& content) {
      std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      if (!out) throw ComputationError("cannot write " + (dir / name).string());
    };
    for (const auto& a : artifacts) write(a.name, a.content);
    write("manifest.json", manifest_json(sub, options, formats, artifacts));
    return kOk;
  } catch (const ValidationError& e) {
    err << "sawom: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ComputationError& e) {
    err << "sawom: " << e.what() << '\n';
    return kComputationFailure;
  } catch (const std::exception& e) {
    err << "sawom: " << e.what() << '\n';
    return kComputationFailure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SAW optomechanics design and estimation toolkit", "sawom"};
  app.set_version_flag("--version", SAWOM_VERSION);
  std::string sub;
  std::filesystem::path config_path;
  DispatchOptions options;
  std::vector<std::string> subs(std::begin(kSubcommands), std::end(kSubcommands));
  app.add_option("subcommand", sub, "material | layout | modemap | phasemap | selectivity | spectrum | cavity | "
                                    "budget | all")
      ->required()
      ->check(CLI::IsMember(subs));
  app.add_option("--config", config_path, "Run configuration (INI)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", options.out_dir, "Output directory (default: [output] directory)");
  app.add_option("--format", options.formats, "csv | json | svg; repeatable")
      ->take_all()
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--seed", options.seed, "Noise seed for synthetic spectra");
  app.add_option("--threads", options.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << SAWOM_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sawom: " << e.what() << "\n\n" << app.help();
    return kValidationFailure;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    options.config_bytes = bytes.str();
    RunConfig config = parse_config(options.config_bytes);
    config.base_dir = config_path.parent_path();
    return dispatch(sub, config, options, err);
  } catch (const ValidationError& e) {
    err << "sawom: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace sawom::cli
