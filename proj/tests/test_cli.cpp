#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/pipeline.hpp"
#include "spdc/profile.hpp"
#include "spdc/scenario.hpp"
#include "spdc/spectrum_io.hpp"
#include "spdc/units.hpp"

using namespace spdc;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = SPDC_SCENARIOS_DIR;

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("spdc_test_" + name);
  fs::remove_all(p);
  return p;
}

Scenario shipped(const std::string& name) {
  auto r = load_scenario((kScenarios / name).string());
  REQUIRE_MESSAGE(r.ok(), r.message());
  return *r.scenario;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const ParseResult& r, const std::string& text) {
  for (const auto& e : r.errors)
    if (e.message.find(text) != std::string::npos) return true;
  return false;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

int cli(const std::string& args) {
  const std::string cmd = std::string(SPDC_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kMinimal =
    "[crystal]\ntype = II\nlength = 2 mm\n[pump]\nwavelength = 405 nm\n"
    "[tilt]\nmode = optimal\n[analysis]\nrun = bandwidth\n";

}  // namespace

TEST_CASE("minimal scenario resolves to the group-velocity matching tilt") {
  const auto r = parse_scenario(kMinimal);
  REQUIRE_MESSAGE(r.ok(), r.message());
  const auto setup = resolve(*r.scenario);
  CHECK(std::abs(setup.tilt.xi_p) / units::deg == doctest::Approx(38.0).epsilon(2.0 / 38.0));
  CHECK(setup.lambda_s == doctest::Approx(810e-9));
}

TEST_CASE("empty file lists every required section") {
  const auto r = parse_scenario("");
  CHECK_FALSE(r.ok());
  for (const char* s : {"[crystal]", "[pump]", "[tilt]", "[analysis]"}) CHECK(contains(r, s));
}

TEST_CASE("negative length names the invariant") {
  std::string text = kMinimal;
  text.replace(text.find("2 mm"), 4, "-2 mm");
  const auto r = parse_scenario(text);
  CHECK_FALSE(r.ok());
  CHECK(contains(r, "L > 0"));
}

TEST_CASE("every problem is reported with its line") {
  const auto r = parse_scenario(
      "[crystal]\ntype = III\nlength = 2 parsecs\ncolour = blue\n[pump]\nwavelength = 405 nm\n"
      "wavelength = 406 nm\n[tilt]\nmode = sideways\n[analysis]\nrun = bandwidth, telepathy\n[extra]\n");
  CHECK(r.errors.size() >= 6);
  auto line_of = [&](const std::string& text) {
    for (const auto& e : r.errors)
      if (e.message.find(text) != std::string::npos) return e.line;
    return -1;
  };
  CHECK(line_of("type:") == 2);
  CHECK(line_of("length:") == 3);
  CHECK(line_of("colour") == 4);
  CHECK(line_of("duplicate") == 7);
  CHECK(line_of("mode:") == 9);
  CHECK(line_of("telepathy") == 11);
  CHECK(line_of("extra") == 12);
}

TEST_CASE("semantic checks") {
  auto with = [](const std::string& extra) {
    return parse_scenario(std::string(kMinimal) + extra);
  };
  CHECK(contains(with("[model]\nkind = exact\n"), "exact"));
  CHECK(contains(with("[grid]\npoints = 300\n"), "power of two"));
  std::string bi = kMinimal;
  bi.replace(bi.find("run = bandwidth"), 15, "run = biphoton");
  bi.replace(bi.find("405 nm\n"), 7, "405 nm\nenvelope = gaussian\nbandwidth = 1 nm\n");
  CHECK(contains(parse_scenario(bi), "cw"));
  std::string mat = kMinimal;
  mat.replace(mat.find("[crystal]\n"), 10, "[crystal]\nmaterial = unobtainium\n");
  CHECK(contains(parse_scenario(mat), "unobtainium"));
}

TEST_CASE("render and parse round-trip") {
  for (const auto& entry : fs::directory_iterator(kScenarios)) {
    const auto s = shipped(entry.path().filename().string());
    const auto back = parse_scenario(render(s));
    REQUIRE_MESSAGE(back.ok(), back.message());
    CHECK(*back.scenario == s);
  }
  auto s = shipped("fig3_grating.scn");
  s.cut_angle = 0.7263;
  s.polarization = PolarizationMap{Polarization::extraordinary, Polarization::extraordinary, Polarization::ordinary};
  s.signal_wavelength = 780e-9;
  s.model = {ModelKind::taylor, 3, true};
  s.points = 512;
  s.half_span = 1.234567e14;
  s.walkoff_sign = -1;
  s.analyses = {Analysis::entanglement, Analysis::sweep, Analysis::pump_sensitivity};
  s.sweep_parameter = SweepParameter::wavelength;
  s.sweep_values = {400e-9, 405e-9, 410e-9};
  s.pump_bandwidths = {0.5e-9, 1.5e-9};
  s.ratios = {4.0, 1e5};
  s.svd_points = 128;
  s.entanglement_pump_bandwidth = 3.3e10;
  s.output_dir = "some/where";
  const auto back = parse_scenario(render(s));
  REQUIRE_MESSAGE(back.ok(), back.message());
  CHECK(*back.scenario == s);
}

TEST_CASE("empty analysis list gives an empty manifest") {
  auto s = shipped("minimal.scn");
  s.analyses.clear();
  RunOptions o;
  o.out_dir = scratch("empty");
  const auto rep = run(s, o);
  CHECK(rep.manifest.empty());
  CHECK(fs::exists(*o.out_dir / "report.json"));
  CHECK_FALSE(fs::exists(*o.out_dir / ".spdc.lock"));
}

TEST_CASE("manifest lists exactly the files written") {
  RunOptions o;
  o.out_dir = scratch("manifest");
  const auto rep = run(shipped("fig4_typeI.scn"), o);
  std::set<std::string> on_disk, listed(rep.manifest.begin(), rep.manifest.end());
  for (const auto& e : fs::directory_iterator(*o.out_dir)) on_disk.insert(e.path().filename().string());
  on_disk.erase("report.json");
  CHECK(on_disk == listed);
  CHECK(listed.size() == rep.manifest.size());
}

TEST_CASE("reruns are byte-identical") {
  for (const char* name : {"fig4_typeI.scn", "fig2b.scn", "entropy_table.scn"}) {
    RunOptions a, b;
    a.out_dir = scratch("det_a");
    b.out_dir = scratch("det_b");
    const auto ra = run(shipped(name), a);
    const auto rb = run(shipped(name), b);
    REQUIRE(ra.manifest == rb.manifest);
    for (const auto& f : ra.manifest) {
      CAPTURE(f);
      CHECK(slurp(*a.out_dir / f) == slurp(*b.out_dir / f));
    }
  }
}

TEST_CASE("summary numbers can be recomputed from the CSV files") {
  RunOptions o;
  o.out_dir = scratch("recompute");
  const auto rep = run(shipped("fig4_typeI.scn"), o);
  const auto& sum = rep.summary;

  const auto wf = read_table_csv(*o.out_dir / "waveform.csv");
  std::vector<double> tau, inten;
  for (const auto& r : wf.rows) {
    tau.push_back(r[0]);
    inten.push_back(r[1]);
  }
  CHECK(rel(weighted_moments(tau, inten).rms, sum["biphoton"]["rms_fs"].get<double>()) < 1e-9);
  CHECK(rel(widest_half_max(tau, inten).interval.width(), sum["biphoton"]["fwhm_fs"].get<double>()) < 1e-9);

  const auto bw = read_table_csv(*o.out_dir / "bandwidth.csv");
  std::vector<double> om, dens;
  for (const auto& r : bw.rows) {
    om.push_back(r[0]);
    dens.push_back(r[3]);
  }
  const auto lobe = main_lobe_half_max(om, dens);
  REQUIRE(lobe);
  CHECK(rel(lobe->width(), sum["bandwidth"]["singles_fwhm_rad_s"].get<double>()) < 1e-9);

  RunOptions e;
  e.out_dir = scratch("recompute_e");
  const auto re = run(shipped("entropy_table.scn"), e);
  const auto et = read_table_csv(*e.out_dir / "entropy_table.csv");
  REQUIRE(et.rows.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(rel(et.rows[i][2], re.summary["entropy_table"][i]["E_ebits"].get<double>()) < 1e-9);
    CHECK(rel(et.rows[i][1], re.summary["entropy_table"][i]["K"].get<double>()) < 1e-9);
  }

  RunOptions w;
  w.out_dir = scratch("recompute_s");
  const auto rs = run(shipped("length_sweep.scn"), w);
  const auto st = read_table_csv(*w.out_dir / "sweep.csv");
  REQUIRE(st.rows.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(rel(st.rows[i][3], rs.summary["sweep"]["antidiagonal_fwhm_nm"][i].get<double>()) < 1e-9);
}

TEST_CASE("binary spectrum round-trip") {
  RunOptions o;
  o.out_dir = scratch("binary");
  run(shipped("fig2a.scn"), o);
  const auto s = shipped("fig2a.scn");
  const auto setup = resolve(s);
  const auto js = compute_spectrum(setup, s).spectrum;
  const auto back = read_spectrum_binary(*o.out_dir / "jsa.bin");
  CHECK(back.cw == js.cw);
  CHECK(back.grid.points == js.grid.points);
  CHECK(back.grid.half_span == js.grid.half_span);
  CHECK(back.grid.omega_s0 == js.grid.omega_s0);
  CHECK(back.length == js.length);
  CHECK(back.amplitude == js.amplitude);
  std::ofstream(*o.out_dir / "junk.bin") << "not a spectrum";
  CHECK_THROWS_AS(read_spectrum_binary(*o.out_dir / "junk.bin"), Error);
}

TEST_CASE("shipped figure scenarios") {
  RunOptions o;
  o.out_dir = scratch("fig3");
  const auto r3 = run(shipped("fig3_typeII.scn"), o);
  CHECK(r3.summary["bandwidth"]["ratio_antidiagonal"].get<double>() == doctest::Approx(7.0).epsilon(1.0 / 7.0));

  o.out_dir = scratch("fig4");
  const auto r4 = run(shipped("fig4_typeI.scn"), o);
  const auto& b = r4.summary["bandwidth"];
  const auto& t = r4.summary["biphoton"];
  CHECK(b["untilted"]["singles_fwhm_nm"].get<double>() == doctest::Approx(96).epsilon(0.15));
  CHECK(b["singles_fwhm_nm"].get<double>() == doctest::Approx(465).epsilon(0.15));
  CHECK(t["untilted"]["rms_fs"].get<double>() == doctest::Approx(19).epsilon(0.15));
  CHECK(t["rms_fs"].get<double>() == doctest::Approx(6.4).epsilon(0.15));
  for (const char* f : {"spectrum.csv", "waveform.csv", "waveform_untilted.csv", "bandwidth.csv"})
    CHECK(fs::exists(*o.out_dir / f));

  o.out_dir = scratch("grating");
  const auto rg = run(shipped("fig3_grating.scn"), o);
  CHECK(rg.summary["setup"]["tilt"]["xi_p_abs_deg"].get<double>() == doctest::Approx(38).epsilon(0.5 / 38));
}

TEST_CASE("sweeps") {
  const auto s = shipped("minimal.scn");
  RunOptions o;
  o.out_dir = scratch("sweep_rep");
  const auto r = sweep(s, SweepParameter::length, {1e-3, 1e-3, 1e-3}, o);
  CHECK_FALSE(r.summary["sweep"]["exponent_defined"].get<bool>());
  CHECK_FALSE(r.warnings.empty());
  CHECK_THROWS_AS(sweep(s, SweepParameter::length, {1e-3, 2e-3}, o), Error);

  o.out_dir = scratch("sweep_tilt");
  auto u = s;
  u.tilt = TiltRequest{};
  const auto rt = sweep(u, SweepParameter::tilt, {0.0, 20 * units::deg, 38 * units::deg}, o);
  const auto& w = rt.summary["sweep"]["antidiagonal_fwhm_nm"];
  CHECK(w[2].get<double>() > w[0].get<double>());

  const auto moved = with_parameter(shipped("fig4_typeI.scn"), SweepParameter::wavelength, 400e-9);
  CHECK(moved.pump.wavelength == 400e-9);
  CHECK(moved.signal() == doctest::Approx(800e-9));
}

TEST_CASE("locked output directory is an I/O error") {
  const auto dir = scratch("locked");
  fs::create_directories(dir);
  std::ofstream(dir / ".spdc.lock") << "";
  RunOptions o;
  o.out_dir = dir;
  try {
    run(shipped("minimal.scn"), o);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  CHECK(fs::exists(dir / ".spdc.lock"));
}

TEST_CASE("module errors carry the stage") {
  auto s = shipped("minimal.scn");
  s.half_span = 1e12;
  RunOptions o;
  o.out_dir = scratch("stage");
  try {
    run(s, o);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncated);
    CHECK(std::string(e.what()).rfind("bandwidth:", 0) == 0);
  }
}

TEST_CASE("command line exit codes") {
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  const std::string scn = (kScenarios / "minimal.scn").string();
  CHECK(cli("validate " + scn) == 0);
  CHECK(cli("run " + scn + " --out " + (dir / "a").string()) == 0);
  CHECK(cli("sweep " + scn + " --param length --values 1mm,2mm,4mm,8mm --out " + (dir / "b").string()) == 0);
  CHECK(fs::exists(dir / "b" / "sweep.csv"));

  std::ofstream(dir / "bad.scn") << "[crystal]\nlength = -2 mm\n";
  CHECK(cli("validate " + (dir / "bad.scn").string()) == 1);
  CHECK(cli("run " + scn + " --grid 300 --out " + (dir / "c").string()) == 1);
  CHECK(cli("validate " + (dir / "missing.scn").string()) == 3);

  std::ofstream(dir / "narrow.scn") << kMinimal << "[grid]\nhalf_span = 0.1 THz\n";
  CHECK(cli("run " + (dir / "narrow.scn").string() + " --out " + (dir / "d").string()) == 2);
  CHECK(cli("frobnicate") == 1);
}
