#include "config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sawom/errors.hpp"

namespace sawom::cli {

namespace {

enum class Kind { Number, Count, Text };

struct Value {
  double number = 0.0;
  std::size_t count = 0;
  std::string text;
};

// Material constants are staged here and resolved once the whole section is read.
struct MaterialDraft {
  std::string cut = "Y";
  std::optional<std::string> name;
  std::map<std::string, double> constants;
};

struct Draft {
  RunConfig config;
  MaterialDraft material;
  std::set<std::string> seen;  // "section.key"
};

struct Field {
  std::string key;
  Kind kind;
  bool positive;  // number must be > 0
  std::function<void(Draft&, const Value&)> apply;
};

using Table = std::map<std::string, std::vector<Field>, std::less<>>;

constexpr std::array<std::string_view, 7> kUnitSuffixes = {"_m", "_hz", "_w", "_rad", "_mps", "_kgm3", "_s"};

std::string_view unit_suffix(std::string_view key) {
  for (auto s : kUnitSuffixes) {
    if (key.size() > s.size() && key.ends_with(s)) return s;
  }
  return {};
}

Field number(std::string key, bool positive, std::function<void(Draft&, double)> set) {
  return {std::move(key), Kind::Number, positive,
          [set = std::move(set)](Draft& d, const Value& v) { set(d, v.number); }};
}

Field count(std::string key, std::function<void(Draft&, std::size_t)> set) {
  return {std::move(key), Kind::Count, false,
          [set = std::move(set)](Draft& d, const Value& v) { set(d, v.count); }};
}

Field text(std::string key, std::function<void(Draft&, const std::string&)> set) {
  return {std::move(key), Kind::Text, false,
          [set = std::move(set)](Draft& d, const Value& v) { set(d, v.text); }};
}

Field material_constant(std::string key) {
  return {key, Kind::Number, false,
          [key](Draft& d, const Value& v) { d.material.constants[key] = v.number; }};
}

const Table& table() {
  static const Table t = [] {
    Table t;
    auto& material = t["material"];
    material.push_back(text("cut", [](Draft& d, const std::string& s) { d.material.cut = s; }));
    material.push_back(text("name", [](Draft& d, const std::string& s) { d.material.name = s; }));
    for (const char* k : {"v_saw_mps", "n_e", "n_o", "density_kgm3", "p11", "p12", "p13", "p14", "p31", "p33",
                          "p41", "p44", "anisotropy_a1", "anisotropy_a2", "anisotropy_a3", "anisotropy_a4"}) {
      material.push_back(material_constant(k));
    }

    t["layout"] = {
        {"lambda_saw_m", Kind::Number, false,
         [](Draft& d, const Value& v) {
           if (!(v.number > 0.0)) throw ValidationError("invalid wavelength");
           d.config.layout.lambda_saw = v.number;
         }},
        count("idt_pairs", [](Draft& d, std::size_t n) { d.config.layout.idt_pairs = n; }),
        count("mirror_pairs", [](Draft& d, std::size_t n) { d.config.layout.mirror_pairs = n; }),
        number("inner_clear_radius_m", true, [](Draft& d, double x) { d.config.layout.inner_clear_radius = x; }),
        count("samples_per_contour", [](Draft& d, std::size_t n) { d.config.layout.samples_per_contour = n; }),
    };

    t["mode"] = {
        number("r_x_m", true, [](Draft& d, double x) { d.config.mode.r_x = x; }),
        number("r_z_m", true, [](Draft& d, double x) { d.config.mode.r_z = x; }),
        number("u0_m", true, [](Draft& d, double x) { d.config.mode.u0 = x; }),
        number("decay_depth_m", true, [](Draft& d, double x) { d.config.mode.decay_depth = x; }),
        number("grid_extent_m", true, [](Draft& d, double x) { d.config.mode.grid_extent = x; }),
        count("grid_points", [](Draft& d, std::size_t n) { d.config.mode.grid_points = n; }),
    };

    t["optics"] = {
        {"lambda_opt_m", Kind::Number, false,
         [](Draft& d, const Value& v) {
           if (!(v.number > 0.0)) throw ValidationError("invalid optical wavelength");
           d.config.optics.lambda_opt = v.number;
         }},
        number("beam_waist_m", true, [](Draft& d, double x) { d.config.optics.beam_waist = x; }),
        number("spot_x_m", false, [](Draft& d, double x) { d.config.optics.spot_x = x; }),
        number("spot_z_m", false, [](Draft& d, double x) { d.config.optics.spot_z = x; }),
    };

    t["cavity"] = {
        number("length_m", true, [](Draft& d, double x) { d.config.cavity.length = x; }),
        number("mirror_roc_m", true, [](Draft& d, double x) { d.config.cavity.mirror_roc = x; }),
        number("reflectivity", true, [](Draft& d, double x) { d.config.cavity.reflectivity = x; }),
        number("kappa_measured_hz", true, [](Draft& d, double x) { d.config.cavity.kappa_measured = x; }),
    };

    t["calibration"] = {
        number("rf_power_w", true, [](Draft& d, double x) { d.config.calibration.rf_power = x; }),
        number("s11_mag", false, [](Draft& d, double x) { d.config.calibration.s11_mag = x; }),
        number("f0_hz", true, [](Draft& d, double x) { d.config.calibration.f0 = x; }),
        number("q", true, [](Draft& d, double x) { d.config.calibration.q = x; }),
        number("sideband_power_w", true, [](Draft& d, double x) { d.config.calibration.sideband_power = x; }),
        number("reference_sideband_power_w", true,
               [](Draft& d, double x) { d.config.calibration.reference_sideband_power = x; }),
        number("reference_phase_rad", true, [](Draft& d, double x) { d.config.calibration.reference_phase = x; }),
        number("shear_strain_zpf", true, [](Draft& d, double x) { d.config.calibration.shear_strain_zpf = x; }),
    };

    t["prospect"] = {
        number("cavity_length_m", true, [](Draft& d, double x) { d.config.prospect.cavity_length = x; }),
        number("optical_power_w", true, [](Draft& d, double x) { d.config.prospect.optical_power = x; }),
        number("mechanical_frequency_hz", true,
               [](Draft& d, double x) { d.config.prospect.mechanical_frequency = x; }),
        number("mechanical_q", true, [](Draft& d, double x) { d.config.prospect.mechanical_q = x; }),
        number("detuning_hz", false, [](Draft& d, double x) { d.config.prospect.detuning = x; }),
        number("kappa_hz", true, [](Draft& d, double x) { d.config.prospect.kappa = x; }),
        number("kappa_ext_hz", true, [](Draft& d, double x) { d.config.prospect.kappa_ext = x; }),
    };

    t["spectrum"] = {
        text("model", [](Draft& d, const std::string& s) { d.config.spectrum.model = parse_line_shape(s); }),
        number("f0_hz", true, [](Draft& d, double x) { d.config.spectrum.f0 = x; }),
        number("linewidth_hz", true, [](Draft& d, double x) { d.config.spectrum.linewidth = x; }),
        number("amplitude", false, [](Draft& d, double x) { d.config.spectrum.amplitude = x; }),
        number("background", false, [](Draft& d, double x) { d.config.spectrum.background = x; }),
        number("fano_phase_rad", false, [](Draft& d, double x) { d.config.spectrum.fano_phase = x; }),
        number("half_span_hz", true, [](Draft& d, double x) { d.config.spectrum.half_span = x; }),
        count("points", [](Draft& d, std::size_t n) { d.config.spectrum.points = n; }),
        number("noise", false,
               [](Draft& d, double x) {
                 if (x < 0.0) throw ValidationError("noise must be nonnegative");
                 d.config.spectrum.noise = x;
               }),
        text("complex",
             [](Draft& d, const std::string& s) {
               if (s != "true" && s != "false") throw ValidationError("expected true or false");
               d.config.spectrum.complex_trace = s == "true";
             }),
        number("sideband_phi_rad", true, [](Draft& d, double x) { d.config.spectrum.sideband_phi = x; }),
        text("trace_csv", [](Draft& d, const std::string& s) { d.config.spectrum.trace_csv = s; }),
    };

    t["output"] = {
        text("directory", [](Draft& d, const std::string& s) { d.config.output.directory = s; }),
        text("formats",
             [](Draft& d, const std::string& s) {
               std::vector<std::string> out;
               std::stringstream in(s);
               std::string item;
               while (std::getline(in, item, ',')) {
                 item.erase(0, item.find_first_not_of(' '));
                 item.erase(item.find_last_not_of(' ') + 1);
                 if (item != "csv" && item != "json" && item != "svg") {
                   throw ValidationError("unknown format '" + item + "'");
                 }
                 out.push_back(item);
               }
               d.config.output.formats = out;
             }),
    };
    return t;
  }();
  return t;
}

std::string unquote(const std::string& raw) {
  if (raw.size() >= 2 && (raw.front() == '"' || raw.front() == '\'') && raw.back() == raw.front()) {
    return raw.substr(1, raw.size() - 2);
  }
  return raw;
}

Value convert(const Field& f, const std::string& raw) {
  Value v;
  if (f.kind == Kind::Text) {
    v.text = unquote(raw);
    return v;
  }
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  if (f.kind == Kind::Count) {
    auto [end, ec] = std::from_chars(first, last, v.count);
    if (ec != std::errc() || end != last || raw.empty()) {
      throw ValidationError("non-numeric value '" + raw + "' (expected a nonnegative integer)");
    }
    return v;
  }
  auto [end, ec] = std::from_chars(first, last, v.number);
  if (ec != std::errc() || end != last || raw.empty() || !std::isfinite(v.number)) {
    throw ValidationError("non-numeric value '" + raw + "'");
  }
  if (f.positive && !(v.number > 0.0)) throw ValidationError("must be positive");
  return v;
}

// Distinguishes a wrong or missing unit suffix from a plain typo.
std::optional<std::string> suffix_mismatch(const std::vector<Field>& fields, std::string_view key) {
  for (const auto& f : fields) {
    const auto suffix = unit_suffix(f.key);
    if (suffix.empty()) continue;
    const std::string_view stem = std::string_view(f.key).substr(0, f.key.size() - suffix.size());
    const auto cut = key.rfind('_');
    if (key == stem || (cut != std::string_view::npos && key.substr(0, cut) == stem)) return f.key;
  }
  return std::nullopt;
}

void resolve_material(Draft& d, std::vector<std::string>& errors) {
  const auto& m = d.material;
  CutLabel cut{};
  try {
    cut = parse_cut_label(m.cut);
  } catch (const ValidationError& e) {
    errors.push_back(std::string("material.cut: ") + e.what());
    return;
  }
  if (cut != CutLabel::Custom) {
    for (const auto& [key, value] : m.constants) {
      errors.push_back("material." + key + ": only allowed with cut = custom");
    }
    d.config.material = material_for_cut(cut);
    if (m.name) d.config.material.name = *m.name;
    return;
  }
  const auto get = [&](const char* key, bool required) -> double {
    if (auto it = m.constants.find(key); it != m.constants.end()) return it->second;
    if (required) errors.push_back(std::string("material.") + key + ": required for cut = custom");
    return 0.0;
  };
  MaterialProperties p;
  p.cut = CutLabel::Custom;
  p.name = m.name.value_or("custom");
  p.v_saw = get("v_saw_mps", true);
  p.n_e = get("n_e", true);
  p.n_o = get("n_o", true);
  p.density = get("density_kgm3", true);
  p.tensor.p11 = get("p11", false);
  p.tensor.p12 = get("p12", false);
  p.tensor.p13 = get("p13", false);
  p.tensor.p14 = get("p14", false);
  p.tensor.p31 = get("p31", false);
  p.tensor.p33 = get("p33", false);
  p.tensor.p41 = get("p41", false);
  p.tensor.p44 = get("p44", false);
  if (!errors.empty()) return;
  try {
    std::vector<AnisotropyProfile::Term> terms;
    for (int h = 1; h <= 4; ++h) {
      const double a = get(("anisotropy_a" + std::to_string(h)).c_str(), false);
      if (a != 0.0) terms.push_back({h, a});
    }
    p.anisotropy = AnisotropyProfile(p.v_saw, terms);
    d.config.material = material_for_cut(CutLabel::Custom, &p);
  } catch (const ValidationError& e) {
    errors.push_back(std::string("material: ") + e.what());
  }
}

void resolve(Draft& d, std::vector<std::string>& errors) {
  resolve_material(d, errors);
  RunConfig& c = d.config;
  c.mode.lambda_saw = c.layout.lambda_saw;
  c.cavity.lambda_opt = c.optics.lambda_opt;
  if (c.has("cavity")) {
    try {
      validate(c.cavity);
    } catch (const ValidationError& e) {
      errors.push_back(std::string("cavity: ") + e.what());
    }
  }
  if (c.has("calibration")) {
    for (const char* key : {"rf_power_w", "f0_hz", "q", "sideband_power_w", "reference_sideband_power_w",
                            "reference_phase_rad"}) {
      if (!d.seen.contains(std::string("calibration.") + key)) {
        errors.push_back(std::string("calibration.") + key + ": required");
      }
    }
    if (c.calibration.s11_mag < 0.0) errors.push_back("calibration.s11_mag: must be nonnegative");
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }

  Draft d;
  std::vector<std::string> errors;
  const Table& fields = table();
  for (const auto& [section, body] : tree) {
    auto entry = fields.find(section);
    if (body.empty()) {
      errors.push_back(section + ": key outside any section");
      continue;
    }
    if (entry == fields.end()) {
      errors.push_back("[" + section + "]: unknown section");
      continue;
    }
    d.config.sections.insert(section);
    for (const auto& [key, node] : body) {
      const std::string where = section + "." + key;
      auto f = std::find_if(entry->second.begin(), entry->second.end(),
                            [&](const Field& x) { return x.key == key; });
      if (f == entry->second.end()) {
        if (auto expected = suffix_mismatch(entry->second, key)) {
          errors.push_back(where + ": unit-suffix mismatch (expected " + *expected + ")");
        } else {
          errors.push_back(where + ": unknown key");
        }
        continue;
      }
      try {
        f->apply(d, convert(*f, node.data()));
        d.seen.insert(where);
      } catch (const ValidationError& e) {
        errors.push_back(where + ": " + e.what());
      }
    }
  }
  resolve(d, errors);

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return d.config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig c = parse_config(buf.str());
  c.base_dir = path.parent_path();
  return c;
}

void require_sections(const RunConfig& config, std::string_view subcommand) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> required = {
      {"material", {"material"}},
      {"layout", {"material", "layout"}},
      {"modemap", {"layout", "mode"}},
      {"phasemap", {"material", "layout", "mode", "optics"}},
      {"selectivity", {"material", "layout", "mode", "optics"}},
      {"spectrum", {"spectrum"}},
      {"cavity", {"optics", "cavity"}},
      {"budget", {"material", "layout", "mode", "optics", "cavity", "calibration"}},
      {"all", {"material", "layout", "mode", "optics", "cavity", "calibration", "spectrum"}},
  };
  auto it = required.find(subcommand);
  if (it == required.end()) throw ValidationError("unknown subcommand: " + std::string(subcommand));
  for (const auto& s : it->second) {
    if (!config.has(s)) {
      throw ValidationError("missing required section [" + s + "] for " + std::string(subcommand));
    }
  }
}

CalibrationBundle calibration_bundle(const RunConfig& c) {
  CalibrationBundle b;
  b.material = c.material;
  b.lambda_saw = c.layout.lambda_saw;
  b.rf_power = c.calibration.rf_power;
  b.s11_mag = c.calibration.s11_mag;
  b.f0 = c.calibration.f0;
  b.q = c.calibration.q;
  b.sideband_power = c.calibration.sideband_power;
  b.reference_sideband_power = c.calibration.reference_sideband_power;
  b.reference_phase = c.calibration.reference_phase;
  b.shear_strain_zpf = c.calibration.shear_strain_zpf;
  b.mode_r_x = c.mode.r_x;
  b.mode_r_z = c.mode.r_z;
  b.decay_depth = c.mode.decay_depth;
  b.cavity = c.cavity;
  b.prospect_cavity_length = c.prospect.cavity_length;
  b.prospect_optical_power = c.prospect.optical_power;
  b.prospect_mechanical_frequency = c.prospect.mechanical_frequency;
  b.prospect_mechanical_q = c.prospect.mechanical_q;
  b.prospect_detuning = c.prospect.detuning;
  b.prospect_kappa = c.prospect.kappa;
  b.prospect_kappa_ext = c.prospect.kappa_ext;
  return b;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  using json = nlohmann::ordered_json;
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  const auto& m = c.material;
  json terms = json::array();
  for (const auto& t : m.anisotropy.terms()) terms.push_back({{"harmonic", t.harmonic}, {"amplitude", t.amplitude}});
  json j;
  j["sections"] = c.sections;
  j["material"] = {{"cut", std::string(to_string(m.cut))},
                   {"name", m.name},
                   {"v_saw_mps", m.v_saw},
                   {"n_e", m.n_e},
                   {"n_o", m.n_o},
                   {"density_kgm3", m.density},
                   {"p11", m.tensor.p11},
                   {"p12", m.tensor.p12},
                   {"p13", m.tensor.p13},
                   {"p14", m.tensor.p14},
                   {"p31", m.tensor.p31},
                   {"p33", m.tensor.p33},
                   {"p41", m.tensor.p41},
                   {"p44", m.tensor.p44},
                   {"anisotropy", terms}};
  j["layout"] = {{"lambda_saw_m", c.layout.lambda_saw},
                 {"idt_pairs", c.layout.idt_pairs},
                 {"mirror_pairs", c.layout.mirror_pairs},
                 {"inner_clear_radius_m", c.layout.inner_clear_radius},
                 {"samples_per_contour", c.layout.samples_per_contour}};
  j["mode"] = {{"r_x_m", c.mode.r_x},
               {"r_z_m", c.mode.r_z},
               {"u0_m", c.mode.u0},
               {"decay_depth_m", c.mode.decay_depth},
               {"grid_extent_m", c.mode.grid_extent},
               {"grid_points", c.mode.grid_points}};
  j["optics"] = {{"lambda_opt_m", c.optics.lambda_opt},
                 {"beam_waist_m", c.optics.beam_waist},
                 {"spot_x_m", opt(c.optics.spot_x)},
                 {"spot_z_m", opt(c.optics.spot_z)}};
  j["cavity"] = {{"length_m", c.cavity.length},
                 {"mirror_roc_m", c.cavity.mirror_roc},
                 {"reflectivity", c.cavity.reflectivity},
                 {"kappa_measured_hz", opt(c.cavity.kappa_measured)}};
  const auto& cal = c.calibration;
  j["calibration"] = {{"rf_power_w", cal.rf_power},
                      {"s11_mag", cal.s11_mag},
                      {"f0_hz", cal.f0},
                      {"q", cal.q},
                      {"sideband_power_w", cal.sideband_power},
                      {"reference_sideband_power_w", cal.reference_sideband_power},
                      {"reference_phase_rad", cal.reference_phase},
                      {"shear_strain_zpf", opt(cal.shear_strain_zpf)}};
  const auto& p = c.prospect;
  j["prospect"] = {{"cavity_length_m", p.cavity_length},
                   {"optical_power_w", p.optical_power},
                   {"mechanical_frequency_hz", p.mechanical_frequency},
                   {"mechanical_q", p.mechanical_q},
                   {"detuning_hz", opt(p.detuning)},
                   {"kappa_hz", opt(p.kappa)},
                   {"kappa_ext_hz", opt(p.kappa_ext)}};
  const auto& s = c.spectrum;
  j["spectrum"] = {{"model", std::string(to_string(s.model))},
                   {"f0_hz", s.f0},
                   {"linewidth_hz", s.linewidth},
                   {"amplitude", s.amplitude},
                   {"background", s.background},
                   {"fano_phase_rad", s.fano_phase},
                   {"half_span_hz", s.half_span},
                   {"points", s.points},
                   {"noise", s.noise},
                   {"complex", s.complex_trace},
                   {"sideband_phi_rad", s.sideband_phi},
                   {"trace_csv", s.trace_csv ? json(s.trace_csv->generic_string()) : json(nullptr)}};
  j["output"] = {{"directory", c.output.directory.generic_string()}, {"formats", c.output.formats}};
  return j;
}

}  // namespace sawom::cli
