// Acceptance checks; one PASS/FAIL line per criterion.
//   acceptance            run everything, exit 1 if anything fails
//   acceptance --only 4   run a single criterion (ids 1..6, 7a, 7b, 7c, 8)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/entanglement.hpp"
#include "spdc/material_io.hpp"
#include "spdc/phase_matching.hpp"
#include "spdc/pipeline.hpp"
#include "spdc/profile.hpp"
#include "spdc/scenario.hpp"
#include "spdc/tilt_optics.hpp"
#include "spdc/units.hpp"

using namespace spdc;
namespace fs = std::filesystem;

namespace {

// tolerances
constexpr double kGratingTiltTol = 0.5;  // deg
constexpr double kTypeIITiltTol = 2.0;   // deg
constexpr double kTypeITiltTol = 1.0;    // deg
constexpr double kRelTol = 0.15;
constexpr double kRatioTol = 1.0;
constexpr double kExponentTol = 0.05;
constexpr double kEntropyTol = 1.0;   // ebits
constexpr double kSvdTol = 0.01;      // relative
constexpr double kDerivTol = 1e-8;
constexpr double kParsevalTol = 1e-9;
constexpr double kPhaseInvTol = 1e-9;
constexpr double kNullTol = 1e-6;
constexpr double kSeparableTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool within(double v, double target, double rel) { return std::abs(v / target - 1.0) <= rel; }

CrystalSpec crystal(PmType type, double length = 2e-3, const std::string& material = "bbo") {
  CrystalSpec c;
  c.material = find_material(material);
  c.type = type;
  c.length = length;
  c.polarization = default_polarizations(c.material, type);
  c.cut_angle = phase_matching_angle(c.material, 405e-9, type, 810e-9, 810e-9).theta;
  return c;
}

const PumpSpec kCw{405e-9, PumpEnvelope::cw, 0.0};
const double kOmegaS = units::wavelength_to_omega(810e-9);

DispersionSample sample(const CrystalSpec& c, WaveRole r) { return dispersion_sample(c, r, kOmegaS); }

double optimal(const CrystalSpec& c) {
  return c.type == PmType::type1 ? optimal_tilt_type1(sample(c, WaveRole::signal))
                                 : optimal_tilt_type2(sample(c, WaveRole::signal), sample(c, WaveRole::idler));
}

JointSpectrum spectrum(const CrystalSpec& c, double xi, int points = 1024) {
  const PhaseMatchingModel m(c, kCw, TiltSetup::with_tilt(xi), 810e-9);
  return joint_spectrum(m, default_grid(m, points));
}

Outcome c1() {
  Outcome o;
  const auto g = GratingSpec::from_diffraction(1e-3 / 1200, 1, 52 * units::deg, 405e-9);
  const double xi = std::abs(tilt_from_dispersion(angular_dispersion(g), 405e-9)) / units::deg;
  o.require(std::abs(xi - 38.0) <= kGratingTiltTol, fmt("|xi| = %.3f deg (38 +- 0.5)", xi));
  return o;
}

Outcome c2() {
  Outcome o;
  const double xi = std::abs(optimal(crystal(PmType::type2))) / units::deg;
  o.require(std::abs(xi - 38.0) <= kTypeIITiltTol, fmt("xi_II = %.3f deg (38 +- 2)", xi));
  return o;
}

Outcome c3() {
  Outcome o;
  const double xi = optimal(crystal(PmType::type1)) / units::deg;
  o.require(std::abs(xi - 16.2) <= kTypeITiltTol, fmt("xi_I = %.3f deg (16.2 +- 1)", xi));
  return o;
}

Outcome c4() {
  Outcome o;
  const auto c = crystal(PmType::type2);
  const auto u = bandwidth_report(spectrum(c, 0.0));
  const auto t = bandwidth_report(spectrum(c, 38 * units::deg));
  const double u_a = u.antidiagonal_fwhm / units::nm, u_s = u.singles_fwhm / units::nm;
  const double t_a = t.antidiagonal_fwhm / units::nm, t_s = t.singles_fwhm / units::nm;
  o.require(within(u_a, 7.5, kRelTol), fmt("untilted dL- = %.3f nm", u_a));
  o.require(within(u_s, 5.2, kRelTol), fmt("untilted dl_s = %.3f nm", u_s));
  o.require(within(t_a, 52, kRelTol), fmt("38 deg dL- = %.2f nm", t_a));
  o.require(within(t_s, 41, kRelTol), fmt("38 deg dl_s = %.2f nm", t_s));
  o.require(std::abs(t_a / u_a - 7.0) <= kRatioTol, fmt("ratio = %.3f (7 +- 1)", t_a / u_a));
  return o;
}

Outcome c5() {
  Outcome o;
  const auto c = crystal(PmType::type1);
  const auto su = spectrum(c, 0.0), st = spectrum(c, 16.2 * units::deg);
  const double bu = bandwidth_report(su).singles_fwhm / units::nm;
  const double bt = bandwidth_report(st).singles_fwhm / units::nm;
  const auto wu = temporal_biphoton(su), wt = temporal_biphoton(st);
  o.require(within(bu, 96, kRelTol), fmt("untilted FWHM = %.1f nm", bu));
  o.require(within(wu.rms / units::fs, 19, kRelTol), fmt("rms = %.2f fs", wu.rms / units::fs));
  o.require(within(wu.fwhm / units::fs, 13.4, kRelTol), fmt("FWHM = %.2f fs", wu.fwhm / units::fs));
  o.require(within(bt, 465, kRelTol), fmt("16.2 deg FWHM = %.1f nm", bt));
  o.require(within(wt.rms / units::fs, 6.4, kRelTol), fmt("rms = %.2f fs", wt.rms / units::fs));
  o.require(within(wt.fwhm / units::fs, 4.6, kRelTol), fmt("FWHM = %.2f fs", wt.fwhm / units::fs));
  return o;
}

Outcome c6() {
  Outcome o;
  const std::vector<double> L = {1e-3, 2e-3, 4e-3, 8e-3};
  struct Case {
    const char* name;
    PmType type;
    bool tilted;
    double target;
  };
  for (const auto& k : {Case{"II untilted", PmType::type2, false, -1.0},
                        Case{"II optimal", PmType::type2, true, -0.5},
                        Case{"I optimal", PmType::type1, true, -0.25}}) {
    std::vector<double> w;
    for (double l : L) {
      const auto c = crystal(k.type, l);
      w.push_back(bandwidth_report(spectrum(c, k.tilted ? optimal(c) : 0.0)).antidiagonal_omega);
    }
    const auto f = fit_power_law(L, w);
    o.require(f.defined && std::abs(f.exponent - k.target) <= kExponentTol,
              std::string(k.name) + fmt(" %.4f", f.exponent));
  }
  return o;
}

Outcome c7a() {
  Outcome o;
  const double e = gaussian_entropy({1.0, 3.3e6}).E;
  o.require(std::abs(e - 21.0) <= kEntropyTol, fmt("E(3.3e6) = %.4f ebits (21 +- 1)", e));
  return o;
}

Outcome c7b() {
  Outcome o;
  const double e = gaussian_entropy({1.0, 8.4e7}).E;
  o.require(e > 26.0, fmt("E(8.4e7) = %.4f ebits (> 26)", e));
  return o;
}

Outcome c7c() {
  Outcome o;
  for (double r : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    const DoubleGaussianModel m{1e13, r * 1e13};
    const auto s = schmidt_decompose(double_gaussian_spectrum(m, r > 50 ? 512 : 256));
    const auto g = gaussian_entropy(m);
    const double err = g.E > 0 ? std::abs(s.E / g.E - 1.0) : std::abs(s.E);
    o.require(err <= kSvdTol, fmt("r=%g", r) + fmt(" %.2e", err));
  }
  return o;
}

UniaxialMaterial one_term() {
  return parse_material(
      "name = oneterm\nform = sellmeier\nordinary = 1.0, 1.2, 0.012\n"
      "extraordinary = 1.0, 1.1, 0.011\nrange = 0.3, 3.0\n");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c8() {
  Outcome o;
  {  // analytic derivatives of n² = 1 + 1.2 λ²/(λ² - 0.012)
    double worst = 0.0;
    const auto m = one_term();
    for (double lambda : {0.5e-6, 0.81e-6, 1.3e-6, 2.0e-6}) {
      const double l = lambda / units::um, d = l * l - 0.012;
      const double n = std::sqrt(1.0 + 1.2 * l * l / d);
      const double n1 = -1.2 * 0.012 * l / (d * d) / n;
      const double n2 = (1.2 * 0.012 * (3 * l * l + 0.012) / (d * d * d) - n1 * n1) / n;
      const double w = units::wavelength_to_omega(lambda);
      const double N = (n - l * n1) / kSpeedOfLight, g = l * l * n2 / (w * kSpeedOfLight);
      const auto q = group_quantities(m, Polarization::ordinary, 0.0, w);
      worst = std::max({worst, std::abs(q.N / N - 1.0), std::abs(q.g / g - 1.0)});
    }
    o.require(worst < kDerivTol, fmt("derivatives %.1e", worst));
  }
  for (const char* mat : {"bbo", "bbo_eimerl1987"}) {
    const auto c1 = crystal(PmType::type1, 2e-3, mat), c2 = crystal(PmType::type2, 2e-3, mat);
    const double x2 = optimal(c2), x1 = optimal(c1);
    const auto s = effective_dispersion(sample(c2, WaveRole::signal), x2);
    const auto i = effective_dispersion(sample(c2, WaveRole::idler), x2);
    const double dn = std::abs(s.N_eff - i.N_eff) / std::abs(s.base.N);
    const double dg = std::abs(effective_dispersion(sample(c1, WaveRole::signal), x1).g_eff) /
                      std::abs(sample(c1, WaveRole::signal).g);
    o.require(dn < kNullTol && dg < kNullTol, std::string(mat) + fmt(" nulling %.1e", std::max(dn, dg)));

    const auto js = spectrum(c1, 16.2 * units::deg);
    const auto w = temporal_biphoton(js);
    const double pe = std::abs(w.temporal_norm / w.spectral_norm - 1.0);
    o.require(pe < kParsevalTol, fmt("Parseval %.1e", pe));
    const auto v = temporal_biphoton(with_linear_phase(js, 1.3, 25e-15));
    const double inv = std::max(std::abs(v.rms / w.rms - 1.0), std::abs(v.fwhm / w.fwhm - 1.0));
    o.require(inv < kPhaseInvTol, fmt("phase invariance %.1e", inv));
  }
  {
    const FrequencyGrid g{2e15, 2e15, 5e13, 256};
    const auto js = tabulate(g, false, [](double a, double b) {
      return std::exp(-a * a / 2e26 - (b - 3e12) * (b - 3e12) / 5e26);
    });
    const double e = std::abs(schmidt_decompose(js).E);
    o.require(e < kSeparableTol, fmt("separable E %.1e", e));
  }
  {
    const auto r = load_scenario(std::string(SPDC_SCENARIOS_DIR) + "/fig4_typeI.scn");
    const auto base = fs::temp_directory_path() / "spdc_acceptance";
    fs::remove_all(base);
    RunOptions a, b;
    a.out_dir = base / "a";
    b.out_dir = base / "b";
    const auto ra = run(*r.scenario, a);
    const auto rb = run(*r.scenario, b);
    bool same = ra.manifest == rb.manifest && !ra.manifest.empty();
    for (const auto& f : ra.manifest) same = same && slurp(*a.out_dir / f) == slurp(*b.out_dir / f);
    o.require(same, "determinism (" + std::to_string(ra.manifest.size()) + " files)");
    fs::remove_all(base);
  }
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--only") only = argv[i + 1];

  const std::vector<Criterion> all = {
      {"1", "grating tilt", c1},
      {"2", "optimal type-II tilt", c2},
      {"3", "optimal type-I tilt", c3},
      {"4", "type-II bandwidths", c4},
      {"5", "type-I spectra and biphoton", c5},
      {"6", "length scaling exponents", c6},
      {"7a", "entropy at 3.3e6", c7a},
      {"7b", "entropy at 8.4e7", c7b},
      {"7c", "SVD vs closed form", c7c},
      {"8", "property suites", c8},
  };
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!only.empty() && only != c.id) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-3s %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), s);
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed ? 1 : 0;
}
