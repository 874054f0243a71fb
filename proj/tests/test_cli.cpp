#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "dispatch.hpp"
#include "sawom/errors.hpp"

using namespace sawom;
using namespace sawom::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfig = fs::path(SAWOM_CONFIG_DIR) / "ycut.ini";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sawom_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun sawom_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sawom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path dir = scratch(name);
  fs::create_directories(dir);
  std::ofstream(dir / "run.ini") << text;
  return dir / "run.ini";
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.insert(e.path().filename().string());
  return names;
}

}  // namespace

TEST_CASE("minimal material config") {
  const RunConfig c = parse_config("[material]\ncut = \"Y\"\n");
  CHECK(c.material.v_saw == 3488.0);
  CHECK(c.has("material"));
  CHECK_FALSE(c.has("layout"));
  CHECK(parse_config("[material]\ncut = 128Y\n").material.v_saw == 3997.0);
}

TEST_CASE("field-level config errors") {
  const auto fails_with = [](const std::string& text, const std::string& fragment) {
    try {
      (void)parse_config(text);
      FAIL("accepted: " << text);
    } catch (const ValidationError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
  };
  fails_with("[layout]\nlambda_saw_m = -1\n", "layout.lambda_saw_m: invalid wavelength");
  fails_with("[layout]\nlambda_saw_um = 40\n", "unit-suffix mismatch (expected lambda_saw_m)");
  fails_with("[layout]\nlambda_saw = 40e-6\n", "unit-suffix mismatch");
  fails_with("[calibration]\nf0_mhz = 86.4\n", "calibration.f0_mhz: unit-suffix mismatch (expected f0_hz)");
  fails_with("[layout]\nlambda_saw_m = forty\n", "non-numeric value");
  fails_with("[layout]\nidt_pairs = 2.5\n", "non-numeric value");
  fails_with("[mode]\nr_x_mm = 1\n", "unit-suffix mismatch");
  fails_with("[mode]\ncolour = red\n", "mode.colour: unknown key");
  fails_with("[modes]\nr_x_m = 1e-4\n", "unknown section");
  fails_with("stray = 1\n[material]\ncut = Y\n", "key outside any section");
  fails_with("[material]\ncut = X\n", "unknown material cut");
  fails_with("[material]\ncut = Y\nn_e = 2.2\n", "only allowed with cut = custom");
  fails_with("[material]\ncut = custom\nn_e = 2.2\n", "material.v_saw_mps: required for cut = custom");
  fails_with("[calibration]\nrf_power_w = 1e-12\n", "calibration.f0_hz: required");
  fails_with("[cavity]\nreflectivity = 1.5\n", "reflectivity must lie in (0, 1)");
  fails_with("[optics]\nlambda_opt_m = 0\n", "invalid optical wavelength");
  fails_with("[output]\nformats = csv,png\n", "unknown format 'png'");
  fails_with("[layout]\nidt_pairs = 1\nidt_pairs = 2\n", "syntax error");
}

TEST_CASE("all field errors are reported together") {
  try {
    (void)parse_config("[layout]\nlambda_saw_m = -1\n[mode]\ncolour = 1\n");
    FAIL("accepted");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("invalid wavelength") != std::string::npos);
    CHECK(msg.find("mode.colour") != std::string::npos);
  }
}

TEST_CASE("custom material record") {
  const RunConfig c = parse_config(
      "[material]\ncut = custom\nname = quartz-like\nv_saw_mps = 3158\nn_e = 1.55\nn_o = 1.54\n"
      "density_kgm3 = 2650\np12 = 0.27\np14 = -0.03\np31 = 0.27\nanisotropy_a1 = 0.05\n");
  CHECK(c.material.cut == CutLabel::Custom);
  CHECK(c.material.name == "quartz-like");
  CHECK(c.material.v_saw == 3158.0);
  CHECK(c.material.tensor.p14 == -0.03);
  REQUIRE(c.material.anisotropy.terms().size() == 1);
  CHECK(c.material.anisotropy.terms()[0].amplitude == 0.05);
}

TEST_CASE("parsing is deterministic") {
  const std::string text = slurp(kConfig);
  CHECK(to_json(parse_config(text)) == to_json(parse_config(text)));
  const RunConfig c = parse_config(text);
  CHECK(c.mode.lambda_saw == c.layout.lambda_saw);
  CHECK(c.cavity.lambda_opt == c.optics.lambda_opt);
  CHECK(c.cavity.kappa_measured == 3.6e6);
}

TEST_CASE("required sections per subcommand") {
  const RunConfig c = parse_config("[material]\ncut = Y\n");
  CHECK_NOTHROW(require_sections(c, "material"));
  CHECK_THROWS_WITH_AS(require_sections(c, "budget"), "missing required section [layout] for budget",
                       ValidationError);
  const auto r = sawom_cli({"budget", "--config", write_config("sections", "[material]\ncut = Y\n").string(), "--out",
                      scratch("sections_out").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing required section") != std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("unknown subcommand prints usage") {
    const auto r = sawom_cli({"frobnicate", "--config", kConfig.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("subcommand") != std::string::npos);
    CHECK(r.err.find("--config") != std::string::npos);
  }
  SUBCASE("missing config") {
    CHECK(sawom_cli({"budget"}).code == 1);
    CHECK(sawom_cli({"budget", "--config", "/nonexistent/run.ini"}).code == 1);
  }
  SUBCASE("bad flag values") {
    CHECK(sawom_cli({"budget", "--config", kConfig.string(), "--format", "png"}).code == 1);
    CHECK(sawom_cli({"budget", "--config", kConfig.string(), "--threads", "0"}).code == 1);
  }
  SUBCASE("validation failure inside the pipeline") {
    std::string text = slurp(kConfig);
    text.replace(text.find("s11_mag = 0"), 11, "s11_mag = 1.5");
    const auto r = sawom_cli({"budget", "--config", write_config("s11", text).string(), "--out",
                        scratch("s11_out").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("phonon_number_from_reflection: nonphysical reflection") != std::string::npos);
  }
  SUBCASE("computation failure") {
    const auto cfg = write_config("flat", "[spectrum]\nmodel = lorentzian\namplitude = 0\n");
    const auto r = sawom_cli({"spectrum", "--config", cfg.string(), "--out", scratch("flat_out").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("no resonance found") != std::string::npos);
    CHECK_FALSE(fs::exists(scratch("flat_out") / "manifest.json"));
  }
  SUBCASE("help") { CHECK(sawom_cli({"--help"}).code == 0); }
}

TEST_CASE("budget artifacts") {
  const fs::path out = scratch("budget");
  REQUIRE(sawom_cli({"budget", "--config", kConfig.string(), "--out", out.string()}).code == 0);
  const auto j = nlohmann::json::parse(slurp(out / "budget.json"));
  CHECK(j["calibration"]["g0_over_2pi_hz"].get<double>() == doctest::Approx(0.060).epsilon(0.01));
  CHECK(j["calibration"]["delta_x_m"].get<double>() == doctest::Approx(1.065e-17).epsilon(1e-3));
  CHECK(j["zero_point"]["u_zpf_ratio"].get<double>() == doctest::Approx(0.5).epsilon(0.05));
  CHECK(j["prospect"]["g0_over_2pi_hz"].get<double>() == doctest::Approx(10.0).epsilon(0.02));
  CHECK(j["prospect"]["cooperativity"].get<double>() == doctest::Approx(0.18).epsilon(0.05));
  CHECK(j["prospect"]["cooperativity_note"].get<std::string>().find("convention") != std::string::npos);
  CHECK(slurp(out / "budget.csv").starts_with("quantity,value,unit\n"));
}

TEST_CASE("manifest covers exactly the written files") {
  const fs::path out = scratch("manifest");
  REQUIRE(sawom_cli({"all", "--config", kConfig.string(), "--out", out.string(), "--threads", "4"}).code == 0);
  const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(m["tool"] == "sawom");
  CHECK(m["config_sha256"] == sha256_hex(slurp(kConfig)));
  CHECK_FALSE(m.contains("threads"));
  std::set<std::string> listed{"manifest.json"};
  for (const auto& a : m["artifacts"]) {
    const std::string name = a["path"];
    listed.insert(name);
    REQUIRE(fs::exists(out / name));
    const std::string bytes = slurp(out / name);
    CHECK(a["sha256"] == sha256_hex(bytes));
    CHECK(a["bytes"] == bytes.size());
  }
  CHECK(listed == listing(out));
  CHECK(listed.size() > 20);
}

TEST_CASE("format filter") {
  const fs::path out = scratch("formats");
  REQUIRE(sawom_cli({"phasemap", "--config", kConfig.string(), "--out", out.string(), "--format", "json"}).code == 0);
  CHECK(listing(out) == std::set<std::string>{"manifest.json", "phasemap.json"});

  const fs::path both = scratch("formats_both");
  REQUIRE(sawom_cli({"phasemap", "--config", kConfig.string(), "--out", both.string(), "--format", "svg", "--format",
               "csv"})
              .code == 0);
  CHECK(listing(both) == std::set<std::string>{"manifest.json", "phasemap_x.csv", "phasemap_x.svg",
                                               "phasemap_z.csv", "phasemap_z.svg"});
  const std::string csv = slurp(both / "phasemap_z.csv");
  CHECK(csv.starts_with("x_m,z_m,phi_rad,sideband_power_norm\n"));
  const std::string svg = slurp(both / "phasemap_x.svg");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("max ") != std::string::npos);
  CHECK(svg.find("min ") != std::string::npos);
}

TEST_CASE("modemap CSV layout") {
  const fs::path out = scratch("modemap");
  REQUIRE(sawom_cli({"modemap", "--config", kConfig.string(), "--out", out.string(), "--format", "csv"}).code == 0);
  std::ifstream in(out / "modemap.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "x_m,z_m,u_m");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 513u * 513u);
}

TEST_CASE("reruns and thread counts give identical bytes") {
  for (const char* sub : {"budget", "phasemap", "selectivity", "modemap"}) {
    const fs::path a = scratch(std::string(sub) + "_a");
    const fs::path b = scratch(std::string(sub) + "_b");
    REQUIRE(sawom_cli({sub, "--config", kConfig.string(), "--out", a.string(), "--threads", "1"}).code == 0);
    REQUIRE(sawom_cli({sub, "--config", kConfig.string(), "--out", b.string(), "--threads", "8"}).code == 0);
    for (const auto& name : listing(a)) CHECK_MESSAGE(slurp(a / name) == slurp(b / name), sub << "/" << name);
    CHECK(listing(a) == listing(b));
  }
}

TEST_CASE("seeded noise") {
  const auto cfg = write_config("noise", "[spectrum]\nmodel = lorentzian\nnoise = 0.01\n");
  const auto run = [&](const std::string& tag, const char* seed) {
    const fs::path out = scratch("noise_" + tag);
    REQUIRE(sawom_cli({"spectrum", "--config", cfg.string(), "--out", out.string(), "--seed", seed}).code == 0);
    return slurp(out / "spectrum_trace.csv");
  };
  const auto a = run("a", "7");
  CHECK(a == run("b", "7"));
  CHECK(a != run("c", "8"));
  const auto fit = nlohmann::json::parse(slurp(fs::temp_directory_path() / "sawom_cli_test_noise_a" / "spectrum.json"));
  CHECK(fit["linewidth_fwhm_hz"].get<double>() == doctest::Approx(1.7e6).epsilon(0.02));
}

TEST_CASE("spectrum from a trace file") {
  const fs::path dir = scratch("trace_file");
  fs::create_directories(dir);
  {
    std::ofstream t(dir / "trace.csv");
    t << "frequency_hz,power\n";
    for (int i = 0; i < 401; ++i) {
      const double f = 96e6 + i * 1e4;
      const double x = 2.0 * (f - 98.0e6) / 0.2e6;
      t << f << ',' << 0.1 + 1.0 / (1.0 + x * x) << '\n';
    }
    std::ofstream(dir / "run.ini") << "[spectrum]\nmodel = lorentzian\ntrace_csv = trace.csv\n";
  }
  const fs::path out = scratch("trace_file_out");
  REQUIRE(sawom_cli({"spectrum", "--config", (dir / "run.ini").string(), "--out", out.string()}).code == 0);
  const auto fit = nlohmann::json::parse(slurp(out / "spectrum.json"));
  CHECK(fit["source"] == "file");
  CHECK(fit["q"].get<double>() == doctest::Approx(490.0).epsilon(1e-3));

  std::ofstream(dir / "bad.csv") << "frequency_hz,power\n1,abc\n";
  std::ofstream(dir / "bad.ini") << "[spectrum]\ntrace_csv = bad.csv\n";
  CHECK(sawom_cli({"spectrum", "--config", (dir / "bad.ini").string(), "--out", out.string()}).code == 1);
}
