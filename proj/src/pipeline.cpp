#include "spdc/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "spdc/error.hpp"
#include "spdc/material_io.hpp"
#include "spdc/profile.hpp"
#include "spdc/spectrum_io.hpp"
#include "spdc/units.hpp"

namespace spdc {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) : path_(dir / ".spdc.lock") {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::io, "cannot create output directory " + dir.string());
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f) fail(ErrorCode::io, "output directory is locked by another run: " + path_.string());
    std::fclose(f);
  }
  ~DirectoryLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  fs::path path_;
};

struct Sink {
  fs::path dir;
  FileMeta meta;
  RunReport& report;

  fs::path file(const std::string& name) {
    report.manifest.push_back(name);
    return dir / name;
  }

  FileMeta titled(const std::string& title) const {
    FileMeta m = meta;
    m.title = title;
    return m;
  }

  void script(const std::string& name, const std::string& body) {
    std::ofstream out(file(name));
    out << "# gnuplot script; run from the output directory\n"
        << "set datafile separator ','\n"
        << body;
    if (!out) fail(ErrorCode::io, "cannot write " + name);
  }
};

double deg(double rad) { return rad / units::deg; }
double to_nm(double m) { return m / units::nm; }
double to_fs(double s) { return s / units::fs; }

json grating_json(const GratingSpec& g) {
  return {{"lines_per_mm", 1e-3 / g.spacing},
          {"order", g.order},
          {"incidence_deg", deg(g.incidence)},
          {"diffraction_deg", deg(g.diffraction)},
          {"wavelength_nm", to_nm(g.wavelength)},
          {"angular_dispersion_per_m", angular_dispersion(g)}};
}

json setup_json(const ResolvedSetup& r) {
  json j;
  j["material"] = r.crystal.material.name;
  j["type"] = to_string(r.crystal.type);
  j["length_mm"] = r.crystal.length / units::mm;
  j["cut_angle_deg"] = deg(r.crystal.cut_angle);
  j["lambda_p_nm"] = to_nm(r.pump.wavelength);
  j["lambda_s_nm"] = to_nm(r.lambda_s);
  j["lambda_i_nm"] = to_nm(r.lambda_i);
  json t;
  t["source"] = to_string(r.tilt.source);
  t["xi_p_deg"] = deg(r.tilt.xi_p);
  t["xi_p_abs_deg"] = std::abs(deg(r.tilt.xi_p));
  if (r.gratings) {
    t["xi_s_deg"] = deg(r.tilt.xi_s);
    t["alpha_p"] = r.tilt.alpha_p;
    t["alpha_s"] = r.tilt.alpha_s;
    t["pump_grating"] = grating_json(*r.pump_grating);
    t["signal_grating"] = grating_json(r.gratings->grating);
    t["custom_density"] = r.gratings->custom_density;
    const auto res = matching_residuals(r.tilt);
    t["matching_residuals"] = {res[0], res[1]};
  }
  j["tilt"] = t;
  return j;
}

json bandwidth_json(const BandwidthReport& b) {
  return {{"singles_fwhm_nm", to_nm(b.singles_fwhm)},
          {"antidiagonal_fwhm_nm", to_nm(b.antidiagonal_fwhm)},
          {"singles_fwhm_rad_s", b.singles_omega},
          {"antidiagonal_fwhm_rad_s", b.antidiagonal_omega},
          {"lambda_s0_nm", to_nm(b.lambda_s0)},
          {"conversion", b.conversion}};
}

// Profiles used by the bandwidth report: marginal and antidiagonal densities.
Table bandwidth_table(const JointSpectrum& js) {
  const auto& g = js.grid;
  const int n = g.points;
  Table t;
  t.columns = {"omega_s rad/s", "lambda_s_nm nm", "lambda_minus_nm nm", "singles arb",
               "antidiagonal arb"};
  const double h = g.spacing();
  for (int i = 0; i < n; ++i) {
    double marginal = 0.0, anti = 0.0;
    if (js.cw) {
      marginal = anti = std::norm(js.amplitude[i]);
    } else {
      for (int j = 0; j < n; ++j) marginal += std::norm(js.at(i, j));
      marginal *= h;
      anti = std::norm(js.at(i, n - 1 - i));
    }
    t.rows.push_back({g.node(i), to_nm(units::omega_to_wavelength(g.omega_s0 + g.node(i))),
                      to_nm(lambda_minus(g, g.node(i))), marginal, anti});
  }
  return t;
}

json biphoton_json(const BiphotonWaveform& w, double tl, bool verbose) {
  json j = {{"rms_fs", to_fs(w.rms)},
            {"fwhm_fs", to_fs(w.fwhm)},
            {"transform_limit_ratio", tl},
            {"multi_lobe", w.multi_lobe},
            {"group_delay_fs", to_fs(w.group_delay)},
            {"parseval_relative_error", std::abs(w.temporal_norm / w.spectral_norm - 1.0)}};
  if (verbose) j["amplitude_rms_fs"] = to_fs(w.amplitude_rms);
  return j;
}

void log(const RunOptions& o, const std::string& msg) {
  if (o.log) *o.log << msg << '\n';
}

void sweep_into(const Scenario& s, SweepParameter parameter, const std::vector<double>& values,
                Sink& sink, const RunOptions& options) {
  if (values.size() < 3) fail(ErrorCode::validation, "sweep needs at least 3 values");
  if (parameter != SweepParameter::tilt)
    for (double v : values)
      if (!(v > 0.0))
        fail(ErrorCode::validation, std::string("sweep values must be positive for ") +
                                        to_string(parameter));
  const bool temporal = s.has(Analysis::biphoton) && s.pump.envelope == PumpEnvelope::cw;
  Table t;
  const char* unit = parameter == SweepParameter::tilt ? "value rad" : "value m";
  t.columns = {unit, "xi_p_deg deg", "singles_nm nm", "antidiagonal_nm nm", "singles_rad_s rad/s",
               "antidiagonal_rad_s rad/s"};
  if (temporal) {
    t.columns.push_back("rms_fs fs");
    t.columns.push_back("fwhm_fs fs");
  }
  // widths kept in nm for the summary, fitted in rad/s: λ is not linear in ω at broad bandwidths
  std::vector<double> x, anti, anti_w, singles_w;
  for (double v : values) {
    const Scenario sv = with_parameter(s, parameter, v);
    const auto setup = stage("sweep resolve", [&] { return resolve(sv); });
    const auto run = stage("sweep spectrum", [&] { return compute_spectrum(setup, sv); });
    const auto b = stage("sweep bandwidth", [&] { return bandwidth_report(run.spectrum); });
    std::vector<double> row = {v,
                               deg(setup.tilt.xi_p),
                               to_nm(b.singles_fwhm),
                               to_nm(b.antidiagonal_fwhm),
                               b.singles_omega,
                               b.antidiagonal_omega};
    if (temporal) {
      const auto w = stage("sweep biphoton", [&] { return temporal_biphoton(run.spectrum); });
      row.push_back(to_fs(w.rms));
      row.push_back(to_fs(w.fwhm));
    }
    for (const auto& wmsg : run.spectrum.warnings) sink.report.warnings.push_back(wmsg);
    t.rows.push_back(std::move(row));
    x.push_back(v);
    anti.push_back(b.antidiagonal_fwhm);
    anti_w.push_back(b.antidiagonal_omega);
    singles_w.push_back(b.singles_omega);
    log(options, "sweep " + std::string(to_string(parameter)) + " = " + format_number(v) +
                     ": antidiagonal " + format_number(to_nm(b.antidiagonal_fwhm)) + " nm");
  }
  write_table_csv(sink.file("sweep.csv"), t, sink.titled("parameter sweep"));
  sink.script("sweep.gp",
              "set logscale xy\nset xlabel '" + std::string(to_string(parameter)) +
                  "'\nset ylabel 'FWHM (nm)'\n"
                  "plot 'sweep.csv' every ::1 using 1:4 with linespoints title 'antidiagonal', \\\n"
                  "     'sweep.csv' every ::1 using 1:3 with linespoints title 'singles'\n");

  json j;
  j["parameter"] = to_string(parameter);
  j["values"] = values;
  j["antidiagonal_fwhm_nm"] = json::array();
  for (double a : anti) j["antidiagonal_fwhm_nm"].push_back(to_nm(a));
  if (parameter == SweepParameter::length) {
    const auto fa = fit_power_law(x, anti_w);
    const auto fsn = fit_power_law(x, singles_w);
    j["exponent_defined"] = fa.defined;
    if (fa.defined) {
      j["exponent_antidiagonal"] = fa.exponent;
      j["exponent_singles"] = fsn.exponent;
    } else {
      j["exponent_antidiagonal"] = nullptr;
      sink.report.warnings.push_back("power-law exponent undefined: sweep values have no spread");
    }
  }
  sink.report.summary["sweep"] = j;
}

}  // namespace

ResolvedSetup resolve(const Scenario& s) {
  ResolvedSetup r;
  r.crystal.material = find_material(s.material);
  r.crystal.material.validate();
  r.crystal.type = s.type;
  r.crystal.length = s.length;
  r.crystal.walkoff_sign = s.walkoff_sign;
  r.crystal.polarization = s.polarization.value_or(default_polarizations(r.crystal.material, s.type));
  r.pump = s.pump;
  r.lambda_s = s.signal();
  r.lambda_i = s.idler();
  if (s.cut_angle) {
    r.crystal.cut_angle = *s.cut_angle;
  } else {
    const auto pm = phase_matching_angle(r.crystal.material, r.pump.wavelength, s.type, r.lambda_s,
                                         r.lambda_i, r.crystal.polarization);
    if (pm.degenerate) fail(ErrorCode::degenerate, "every cut angle phase-matches; set cut_angle");
    r.crystal.cut_angle = pm.theta;
  }
  r.crystal.validate();

  switch (s.tilt.mode) {
    case TiltSource::none: r.tilt = TiltSetup::untilted(); break;
    case TiltSource::explicit_tilt: r.tilt = TiltSetup::with_tilt(s.tilt.angle); break;
    case TiltSource::optimal: {
      const auto sig = dispersion_sample(r.crystal, WaveRole::signal,
                                         units::wavelength_to_omega(r.lambda_s));
      const auto idl = dispersion_sample(r.crystal, WaveRole::idler,
                                         units::wavelength_to_omega(r.lambda_i));
      const double xi = s.type == PmType::type1 ? optimal_tilt_type1(sig)
                                                : optimal_tilt_type2(sig, idl, s.walkoff_sign);
      r.tilt = TiltSetup::with_tilt(xi, TiltSource::optimal);
      break;
    }
    case TiltSource::grating_pair: {
      r.pump_grating = GratingSpec::from_diffraction(1e-3 / s.tilt.lines_per_mm, s.tilt.order,
                                                     s.tilt.diffraction, r.pump.wavelength);
      r.gratings = matched_pair(*r.pump_grating, r.lambda_s);
      r.tilt = r.gratings->setup;
      r.notes = r.gratings->notes;
      break;
    }
  }
  r.model = s.model;
  return r;
}

SpectrumRun compute_spectrum(const ResolvedSetup& setup, const Scenario& s,
                             std::optional<int> points, bool untilted) {
  const TiltSetup tilt = untilted ? TiltSetup::untilted() : setup.tilt;
  PhaseMatchingModel model(setup.crystal, setup.pump, tilt, setup.lambda_s, setup.model);
  const int n = points.value_or(s.points);
  std::vector<std::string> warnings;
  FrequencyGrid g;
  if (s.half_span) {
    g = {model.omega(WaveRole::signal), model.omega(WaveRole::idler), *s.half_span, n};
  } else {
    g = default_grid(model, n, &warnings);
  }
  auto js = joint_spectrum(model, g);
  js.warnings.insert(js.warnings.begin(), warnings.begin(), warnings.end());
  return {std::move(model), std::move(js)};
}

Scenario with_parameter(const Scenario& s, SweepParameter parameter, double value) {
  Scenario out = s;
  switch (parameter) {
    case SweepParameter::length: out.length = value; break;
    case SweepParameter::tilt:
      out.tilt = TiltRequest{};
      out.tilt.mode = TiltSource::explicit_tilt;
      out.tilt.angle = value;
      out.model.kind = ModelKind::taylor;
      break;
    case SweepParameter::wavelength:
      if (out.signal_wavelength) *out.signal_wavelength *= value / s.pump.wavelength;
      out.pump.wavelength = value;
      break;
  }
  return out;
}

json RunReport::to_json() const {
  json j;
  j["engine_version"] = engine_version;
  j["scenario_hash"] = scenario_hash;
  j["scenario"] = scenario_text;
  j["summary"] = summary;
  j["warnings"] = warnings;
  j["manifest"] = manifest;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

namespace {

void write_report(RunReport& rep) {
  std::ofstream out(rep.out_dir / "report.json");
  out << rep.to_json().dump(2) << '\n';
  if (!out) fail(ErrorCode::io, "cannot write report.json");
}

RunReport start(const Scenario& s, const RunOptions& options) {
  RunReport rep;
  rep.scenario_text = render(s);
  rep.scenario_hash = hex64(fnv1a(rep.scenario_text));
  rep.out_dir = options.out_dir.value_or(fs::path(s.output_dir));
  return rep;
}

Scenario effective(const Scenario& s, const RunOptions& options) {
  Scenario sc = s;
  if (options.grid_points) sc.points = *options.grid_points;
  auto problems = validate(sc);
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p.message;
    fail(ErrorCode::validation, msg);
  }
  return sc;
}

}  // namespace

RunReport run(const Scenario& scenario, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario s = effective(scenario, options);
  RunReport rep = start(s, options);
  DirectoryLock lock(rep.out_dir);
  FileMeta meta;
  meta.scenario_hash = rep.scenario_hash;
  Sink sink{rep.out_dir, meta, rep};

  const auto setup = stage("resolve", [&] { return resolve(s); });
  rep.summary["setup"] = setup_json(setup);
  for (const auto& n : setup.notes) rep.warnings.push_back(n);
  log(options, "cut angle " + format_number(deg(setup.crystal.cut_angle)) + " deg, tilt " +
                   format_number(deg(setup.tilt.xi_p)) + " deg");

  const bool tilted = setup.tilt.tilted();
  const bool need = s.has(Analysis::joint_spectrum) || s.has(Analysis::bandwidth) ||
                    s.has(Analysis::biphoton) || s.has(Analysis::entanglement);
  std::optional<SpectrumRun> main, base;
  auto baseline = [&]() -> const SpectrumRun& {
    if (!base) base = stage("untilted spectrum", [&] { return compute_spectrum(setup, s, {}, true); });
    return *base;
  };
  if (need) {
    main = stage("joint spectrum", [&] { return compute_spectrum(setup, s); });
    for (const auto& w : main->spectrum.warnings) rep.warnings.push_back(w);
    const auto& g = main->spectrum.grid;
    rep.summary["model"] = {{"tag", main->spectrum.model_tag},
                            {"points", g.points},
                            {"half_span_rad_s", g.half_span},
                            {"cw", main->spectrum.cw}};
  }

  if (s.has(Analysis::joint_spectrum)) {
    const auto& js = main->spectrum;
    write_spectrum_csv(sink.file("jsa.csv"), js, sink.titled("joint spectral amplitude"));
    write_spectrum_binary(sink.file("jsa.bin"), js);
    if (js.cw) {
      Table t;
      t.columns = {"omega_s rad/s", "lambda_s_nm nm", "density arb", "phase_rad rad"};
      const double L = setup.crystal.length;
      const double s0 = main->model.phase_sum(0.0, 0.0);
      for (int i = 0; i < js.grid.points; ++i) {
        const double w = js.grid.node(i);
        t.rows.push_back({w, to_nm(units::omega_to_wavelength(js.grid.omega_s0 + w)),
                          std::norm(js.amplitude[i]),
                          0.5 * L * (main->model.phase_sum(w, -w) - s0)});
      }
      write_table_csv(sink.file("spectrum.csv"), t,
                      sink.titled("spectral density and phase s_k L/2 relative to center"));
      sink.script("spectrum.gp",
                  "set xlabel 'signal wavelength (nm)'\nset ylabel 'density'\nset y2label 'phase (rad)'\n"
                  "set y2tics\nplot 'spectrum.csv' every ::1 using 2:3 with lines title 'density', \\\n"
                  "     'spectrum.csv' every ::1 using 2:4 axes x1y2 with lines title 'phase'\n");
    } else {
      sink.script("jsa.gp",
                  "set xlabel 'Omega_s (rad/s)'\nset ylabel 'Omega_i (rad/s)'\nset view map\n"
                  "splot 'jsa.csv' every ::1 using 1:2:($3**2+$4**2) with pm3d notitle\n");
    }
  }

  std::optional<BandwidthReport> band;
  auto bandwidth = [&]() -> const BandwidthReport& {
    if (!band) band = stage("bandwidth", [&] { return bandwidth_report(main->spectrum); });
    return *band;
  };

  if (s.has(Analysis::bandwidth)) {
    json j = bandwidth_json(bandwidth());
    write_table_csv(sink.file("bandwidth.csv"), bandwidth_table(main->spectrum),
                    sink.titled("singles marginal and antidiagonal density"));
    std::string plot =
        "set xlabel 'Lambda_- (nm)'\nset ylabel 'density'\n"
        "plot 'bandwidth.csv' every ::1 using 3:5 with lines title 'antidiagonal'";
    if (tilted) {
      const auto b0 = stage("untilted bandwidth", [&] { return bandwidth_report(baseline().spectrum); });
      write_table_csv(sink.file("bandwidth_untilted.csv"), bandwidth_table(baseline().spectrum),
                      sink.titled("untilted singles marginal and antidiagonal density"));
      j["untilted"] = bandwidth_json(b0);
      j["ratio_antidiagonal"] = bandwidth().antidiagonal_fwhm / b0.antidiagonal_fwhm;
      j["ratio_singles"] = bandwidth().singles_fwhm / b0.singles_fwhm;
      plot += ", \\\n     'bandwidth_untilted.csv' every ::1 using 3:5 with lines title 'untilted'";
    }
    sink.script("bandwidth.gp", plot + "\n");
    rep.summary["bandwidth"] = j;
    log(options, "antidiagonal FWHM " + format_number(to_nm(bandwidth().antidiagonal_fwhm)) + " nm");
  }

  if (s.has(Analysis::biphoton)) {
    const auto w = stage("biphoton", [&] { return temporal_biphoton(main->spectrum); });
    const double tl = stage("biphoton", [&] { return transform_limit_ratio(main->spectrum); });
    write_waveform_csv(sink.file("waveform.csv"), w, sink.titled("temporal biphoton"));
    json j = biphoton_json(w, tl, options.verbose);
    std::string plot =
        "set xlabel 'tau (fs)'\nset ylabel '|Psi|^2 (1/fs)'\nset xrange [-100:100]\n"
        "plot 'waveform.csv' every ::1 using 1:2 with lines title 'biphoton'";
    if (tilted) {
      const auto w0 = stage("untilted biphoton", [&] { return temporal_biphoton(baseline().spectrum); });
      const double tl0 = stage("untilted biphoton", [&] { return transform_limit_ratio(baseline().spectrum); });
      write_waveform_csv(sink.file("waveform_untilted.csv"), w0, sink.titled("untilted temporal biphoton"));
      j["untilted"] = biphoton_json(w0, tl0, options.verbose);
      plot += ", \\\n     'waveform_untilted.csv' every ::1 using 1:2 with lines title 'untilted'";
    }
    sink.script("waveform.gp", plot + "\n");
    rep.summary["biphoton"] = j;
    log(options, "rms " + format_number(to_fs(w.rms)) + " fs (intensity), " +
                     format_number(to_fs(w.amplitude_rms)) + " fs (amplitude), FWHM " +
                     format_number(to_fs(w.fwhm)) + " fs");
  }

  if (s.has(Analysis::entanglement)) {
    json j;
    PumpSpec pump = setup.pump;
    auto conv = stage("entanglement", [&] { return bandwidth_to_model(bandwidth(), pump); });
    if (s.entanglement_pump_bandwidth) {
      conv.model.pump_bandwidth = *s.entanglement_pump_bandwidth;
      conv.warnings.clear();
    }
    for (const auto& w : conv.warnings) rep.warnings.push_back(w);
    const auto g = gaussian_entropy(conv.model);
    j["model"] = {{"B_c_rad_s", conv.model.biphoton_bandwidth},
                  {"B_p_rad_s", conv.model.pump_bandwidth},
                  {"ratio", conv.model.ratio()},
                  {"K", g.K},
                  {"E_ebits", g.E}};
    if (!main->spectrum.cw) {
      const auto run2 = stage("entanglement", [&] { return compute_spectrum(setup, s, s.svd_points); });
      const auto sch = stage("entanglement", [&] { return schmidt_decompose(run2.spectrum); });
      write_schmidt_csv(sink.file("schmidt.csv"), sch, sink.titled("Schmidt coefficients"));
      j["svd"] = {{"points", s.svd_points}, {"K", sch.K}, {"E_ebits", sch.E},
                  {"modes", sch.modes}, {"truncated", sch.truncated}};
      for (const auto& f : sch.flags) rep.warnings.push_back(f);
    }
    rep.summary["entanglement"] = j;
  }

  if (s.has(Analysis::entropy_table)) {
    const std::vector<double> ratios = s.ratios.empty() ? std::vector<double>{3.3e6, 8.4e7} : s.ratios;
    Table t;
    t.columns = {"ratio B_c/B_p", "K dimensionless", "E ebits"};
    json rows = json::array();
    for (double r : ratios) {
      const auto g = gaussian_entropy({1.0, r});
      t.rows.push_back({r, g.K, g.E});
      rows.push_back({{"ratio", r}, {"K", g.K}, {"E_ebits", g.E}});
    }
    write_table_csv(sink.file("entropy_table.csv"), t, sink.titled("double-Gaussian entanglement"));
    sink.script("entropy_table.gp",
                "set logscale x\nset xlabel 'B_c/B_p'\nset ylabel 'E (ebits)'\n"
                "plot 'entropy_table.csv' every ::1 using 1:3 with linespoints notitle\n");
    rep.summary["entropy_table"] = rows;
  }

  if (s.has(Analysis::pump_sensitivity)) {
    const std::vector<double> widths =
        s.pump_bandwidths.empty() ? std::vector<double>{1e-9, 2e-9} : s.pump_bandwidths;
    Table t;
    t.columns = {"pump_fwhm_nm nm", "B_p_rad_s rad/s", "singles_nm nm", "antidiagonal_nm nm"};
    json rows = json::array();
    for (double dl : widths) {
      Scenario v = s;
      v.pump.envelope = PumpEnvelope::gaussian;
      v.pump.bandwidth = units::dlambda_to_domega(dl, s.pump.wavelength);
      ResolvedSetup sv = setup;
      sv.pump = v.pump;
      const auto r = stage("pump sensitivity", [&] { return compute_spectrum(sv, v, std::min(s.points, 512)); });
      const auto b = stage("pump sensitivity", [&] { return bandwidth_report(r.spectrum); });
      t.rows.push_back({to_nm(dl), v.pump.bandwidth, to_nm(b.singles_fwhm), to_nm(b.antidiagonal_fwhm)});
      rows.push_back({{"pump_fwhm_nm", to_nm(dl)},
                      {"singles_fwhm_nm", to_nm(b.singles_fwhm)},
                      {"antidiagonal_fwhm_nm", to_nm(b.antidiagonal_fwhm)}});
    }
    write_table_csv(sink.file("pump_sensitivity.csv"), t,
                    sink.titled("bandwidths for gaussian pumps of the listed FWHM"));
    rep.summary["pump_sensitivity"] = rows;
  }

  if (s.has(Analysis::sweep)) sweep_into(s, s.sweep_parameter, s.sweep_values, sink, options);

  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_report(rep);
  return rep;
}

RunReport sweep(const Scenario& scenario, SweepParameter parameter,
                const std::vector<double>& values, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario s = effective(scenario, options);
  RunReport rep = start(s, options);
  DirectoryLock lock(rep.out_dir);
  FileMeta meta;
  meta.scenario_hash = rep.scenario_hash;
  Sink sink{rep.out_dir, meta, rep};
  sweep_into(s, parameter, values, sink, options);
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_report(rep);
  return rep;
}

}  // namespace spdc
