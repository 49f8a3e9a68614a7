#include "spdc/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/material_io.hpp"
#include "spdc/spectrum_io.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

constexpr std::pair<Analysis, std::string_view> kAnalysisNames[] = {
    {Analysis::joint_spectrum, "joint-spectrum"},
    {Analysis::bandwidth, "bandwidth"},
    {Analysis::biphoton, "biphoton"},
    {Analysis::entanglement, "entanglement"},
    {Analysis::sweep, "sweep"},
    {Analysis::pump_sensitivity, "pump-sensitivity"},
    {Analysis::entropy_table, "entropy-table"},
};

constexpr std::string_view kRequired[] = {"crystal", "pump", "tilt", "analysis"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss{std::string(s)};
  while (std::getline(ss, cur, ',')) {
    const auto t = trim(cur);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

struct Entry {
  int line;
  std::string value;
};

// Typed readers that report into the diagnostics list.
class Reader {
 public:
  explicit Reader(std::vector<Diagnostic>& errors) : errors_(errors) {}

  void error(int line, const std::string& msg) { errors_.push_back({line, msg}); }

  std::optional<double> quantity(const Entry& e, units::Dimension dim, const std::string& key) {
    const auto q = units::parse_quantity(e.value);
    if (!q) {
      error(e.line, key + ": cannot parse '" + e.value + "'");
      return std::nullopt;
    }
    if (q->dimension != dim) {
      error(e.line, key + ": expected a " + std::string(units::to_string(dim)) + " but got a " +
                        units::to_string(q->dimension));
      return std::nullopt;
    }
    return q->value;
  }

  std::optional<std::vector<double>> quantities(const Entry& e, units::Dimension dim,
                                                const std::string& key) {
    std::vector<double> out;
    bool ok = true;
    for (const auto& item : split_list(e.value)) {
      Entry sub{e.line, item};
      if (auto v = quantity(sub, dim, key)) out.push_back(*v);
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<int> integer(const Entry& e, const std::string& key) {
    const auto q = units::parse_quantity(e.value);
    if (!q || q->dimension != units::Dimension::dimensionless || q->value != std::round(q->value) ||
        std::abs(q->value) > 1e9) {
      error(e.line, key + ": expected an integer, got '" + e.value + "'");
      return std::nullopt;
    }
    return static_cast<int>(q->value);
  }

  std::optional<bool> boolean(const Entry& e, const std::string& key) {
    const auto v = lower(e.value);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    error(e.line, key + ": expected true or false");
    return std::nullopt;
  }

 private:
  std::vector<Diagnostic>& errors_;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"crystal", {"material", "type", "length", "cut_angle", "walkoff_sign", "polarization"}},
      {"pump", {"wavelength", "envelope", "bandwidth"}},
      {"signal", {"wavelength"}},
      {"tilt", {"mode", "angle", "lines_per_mm", "order", "beta"}},
      {"model", {"kind", "order", "refraction_correction"}},
      {"grid", {"points", "half_span"}},
      {"analysis", {"run", "sweep_parameter", "sweep_values", "pump_bandwidths"}},
      {"entanglement", {"ratios", "svd_points", "pump_bandwidth"}},
      {"output", {"dir"}},
  };
  return keys;
}

std::optional<Polarization> parse_pol(std::string_view s) {
  const auto v = lower(trim(s));
  if (v == "e" || v == "extraordinary") return Polarization::extraordinary;
  if (v == "o" || v == "ordinary") return Polarization::ordinary;
  return std::nullopt;
}

char pol_letter(Polarization p) { return p == Polarization::ordinary ? 'o' : 'e'; }

}  // namespace

const char* to_string(Analysis a) {
  for (const auto& [k, v] : kAnalysisNames)
    if (k == a) return v.data();
  return "?";
}

std::optional<Analysis> parse_analysis(std::string_view id) {
  for (const auto& [k, v] : kAnalysisNames)
    if (v == id) return k;
  return std::nullopt;
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::length: return "length";
    case SweepParameter::tilt: return "tilt";
    case SweepParameter::wavelength: return "wavelength";
  }
  return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view id) {
  if (id == "length") return SweepParameter::length;
  if (id == "tilt") return SweepParameter::tilt;
  if (id == "wavelength") return SweepParameter::wavelength;
  return std::nullopt;
}

bool Scenario::has(Analysis a) const {
  return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
}

double Scenario::signal() const { return signal_wavelength.value_or(2.0 * pump.wavelength); }

double Scenario::idler() const { return 1.0 / (1.0 / pump.wavelength - 1.0 / signal()); }

std::string ParseResult::message() const {
  std::ostringstream os;
  for (const auto& e : errors) {
    if (e.line > 0) os << "line " << e.line << ": ";
    os << e.message << '\n';
  }
  return os.str();
}

std::vector<Diagnostic> validate(const Scenario& s) {
  std::vector<Diagnostic> out;
  auto err = [&](const std::string& m) { out.push_back({0, m}); };
  if (!(s.length > 0.0)) err("crystal length violates L > 0");
  if (s.cut_angle && !(*s.cut_angle >= 0.0 && *s.cut_angle <= kPi / 2))
    err("cut_angle must satisfy 0 <= θ <= 90°");
  if (s.walkoff_sign != 1 && s.walkoff_sign != -1) err("walkoff_sign must be +1 or -1");
  if (s.polarization) {
    const bool same = s.polarization->signal == s.polarization->idler;
    if (s.type == PmType::type1 && !same)
      err("type-I needs signal and idler with the same polarization");
    if (s.type == PmType::type2 && same)
      err("type-II needs orthogonally polarized signal and idler");
  }
  try {
    find_material(s.material);
  } catch (const Error& e) {
    err(std::string("material: ") + e.what());
  }
  if (!(s.pump.wavelength > 0.0)) err("pump wavelength must be positive");
  if (s.pump.envelope == PumpEnvelope::gaussian && !(s.pump.bandwidth > 0.0))
    err("gaussian pump needs bandwidth > 0");
  if (s.signal_wavelength && !(*s.signal_wavelength > s.pump.wavelength))
    err("signal wavelength must exceed the pump wavelength");
  switch (s.tilt.mode) {
    case TiltSource::explicit_tilt:
      if (!(std::abs(s.tilt.angle) < kPi / 2)) err("tilt angle must satisfy |ξ| < 90°");
      break;
    case TiltSource::grating_pair:
      if (!(s.tilt.lines_per_mm > 0.0)) err("grating needs lines_per_mm > 0");
      if (!(std::abs(s.tilt.diffraction) < kPi / 2)) err("grating beta must satisfy |β| < 90°");
      break;
    default: break;
  }
  if (s.model.order < 2 || s.model.order > 4) err("model order must be 2, 3 or 4");
  if (s.model.kind == ModelKind::exact && s.tilt.mode != TiltSource::none)
    err("the exact model is untilted only; use kind = taylor with a tilt");
  if (s.points < 256 || !std::has_single_bit(static_cast<unsigned>(s.points)))
    err("grid points must be a power of two >= 256");
  if (s.half_span && !(*s.half_span > 0.0)) err("grid half_span must be positive");
  if (s.has(Analysis::biphoton) && s.pump.envelope != PumpEnvelope::cw)
    err("biphoton analysis requires a cw pump");
  if (s.has(Analysis::sweep)) {
    if (s.sweep_values.size() < 3) err("sweep needs at least 3 values");
    if (s.sweep_parameter != SweepParameter::tilt)
      for (double v : s.sweep_values)
        if (!(v > 0.0)) err("sweep values must be positive for " + std::string(to_string(s.sweep_parameter)));
  }
  for (double b : s.pump_bandwidths)
    if (!(b > 0.0)) err("pump_bandwidths must be positive");
  for (double r : s.ratios)
    if (!(r > 0.0)) err("entanglement ratios must be positive");
  if (s.svd_points < 8 || !std::has_single_bit(static_cast<unsigned>(s.svd_points)))
    err("svd_points must be a power of two >= 8");
  if (s.entanglement_pump_bandwidth && !(*s.entanglement_pump_bandwidth > 0.0))
    err("entanglement pump_bandwidth must be positive");
  if (s.output_dir.empty()) err("output dir must not be empty");
  return out;
}

ParseResult parse_scenario(std::string_view text) {
  ParseResult result;
  auto& errors = result.errors;
  Reader rd(errors);
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_line;
  std::string current;
  int lineno = 0;
  std::stringstream ss{std::string(text)};
  std::string raw;
  while (std::getline(ss, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        rd.error(lineno, "malformed section header");
        continue;
      }
      current = lower(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(current)) {
        rd.error(lineno, "unknown section [" + current + "]");
      } else if (section_line.count(current)) {
        rd.error(lineno, "duplicate section [" + current + "]");
      } else {
        section_line[current] = lineno;
        sections[current];
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      rd.error(lineno, "expected key = value");
      continue;
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (current.empty()) {
      rd.error(lineno, "key '" + key + "' outside any section");
      continue;
    }
    const auto known = known_keys().find(current);
    if (known == known_keys().end()) continue;  // already reported
    if (!known->second.count(key)) {
      rd.error(lineno, "unknown key '" + key + "' in [" + current + "]");
      continue;
    }
    auto& sec = sections[current];
    if (sec.count(key)) {
      rd.error(lineno, "duplicate key '" + key + "'");
      continue;
    }
    sec[key] = {lineno, value};
  }
  for (auto name : kRequired)
    if (!sections.count(std::string(name)))
      rd.error(0, "missing required section [" + std::string(name) + "]");

  Scenario s;
  auto get = [&](const std::string& sec, const std::string& key) -> const Entry* {
    auto it = sections.find(sec);
    if (it == sections.end()) return nullptr;
    auto kt = it->second.find(key);
    return kt == it->second.end() ? nullptr : &kt->second;
  };
  auto require = [&](const std::string& sec, const std::string& key) -> const Entry* {
    const Entry* e = get(sec, key);
    if (!e && sections.count(sec))
      rd.error(section_line[sec], "missing key '" + key + "' in [" + sec + "]");
    return e;
  };
  using units::Dimension;

  // [crystal]
  if (auto e = get("crystal", "material")) s.material = e->value;
  if (auto e = require("crystal", "type")) {
    const auto v = lower(e->value);
    if (v == "i" || v == "1" || v == "type-i") s.type = PmType::type1;
    else if (v == "ii" || v == "2" || v == "type-ii") s.type = PmType::type2;
    else rd.error(e->line, "type: expected I or II");
  }
  if (auto e = require("crystal", "length"))
    if (auto v = rd.quantity(*e, Dimension::length, "length")) s.length = *v;
  if (auto e = get("crystal", "cut_angle"); e && lower(e->value) != "auto")
    if (auto v = rd.quantity(*e, Dimension::angle, "cut_angle")) s.cut_angle = *v;
  if (auto e = get("crystal", "walkoff_sign"))
    if (auto v = rd.integer(*e, "walkoff_sign")) s.walkoff_sign = *v;
  if (auto e = get("crystal", "polarization")) {
    const auto items = split_list(e->value);
    std::vector<Polarization> p;
    for (const auto& it : items)
      if (auto q = parse_pol(it)) p.push_back(*q);
    if (items.size() != 3 || p.size() != 3)
      rd.error(e->line, "polarization: expected three of e/o for pump, signal, idler");
    else
      s.polarization = PolarizationMap{p[0], p[1], p[2]};
  }

  // [pump]
  if (auto e = require("pump", "wavelength"))
    if (auto v = rd.quantity(*e, Dimension::length, "wavelength")) s.pump.wavelength = *v;
  if (auto e = get("pump", "envelope")) {
    const auto v = lower(e->value);
    if (v == "cw") s.pump.envelope = PumpEnvelope::cw;
    else if (v == "gaussian") s.pump.envelope = PumpEnvelope::gaussian;
    else rd.error(e->line, "envelope: expected cw or gaussian");
  }
  if (auto e = get("pump", "bandwidth")) {
    const auto q = units::parse_quantity(e->value);
    if (q && q->dimension == Dimension::length && s.pump.wavelength > 0.0)
      s.pump.bandwidth = units::dlambda_to_domega(q->value, s.pump.wavelength);
    else if (auto v = rd.quantity(*e, Dimension::frequency, "bandwidth"))
      s.pump.bandwidth = *v;
  }

  // [signal]
  if (auto e = get("signal", "wavelength"))
    if (auto v = rd.quantity(*e, Dimension::length, "signal wavelength")) s.signal_wavelength = *v;

  // [tilt]
  if (auto e = require("tilt", "mode")) {
    const auto v = lower(e->value);
    if (v == "none") s.tilt.mode = TiltSource::none;
    else if (v == "explicit") s.tilt.mode = TiltSource::explicit_tilt;
    else if (v == "optimal") s.tilt.mode = TiltSource::optimal;
    else if (v == "grating") s.tilt.mode = TiltSource::grating_pair;
    else rd.error(e->line, "mode: expected none, explicit, optimal or grating");
  }
  if (s.tilt.mode == TiltSource::explicit_tilt) {
    if (auto e = require("tilt", "angle"))
      if (auto v = rd.quantity(*e, Dimension::angle, "angle")) s.tilt.angle = *v;
  } else if (auto e = get("tilt", "angle")) {
    if (auto v = rd.quantity(*e, Dimension::angle, "angle")) s.tilt.angle = *v;
  }
  const bool grating = s.tilt.mode == TiltSource::grating_pair;
  if (auto e = grating ? require("tilt", "lines_per_mm") : get("tilt", "lines_per_mm"))
    if (auto v = rd.quantity(*e, Dimension::dimensionless, "lines_per_mm")) s.tilt.lines_per_mm = *v;
  if (auto e = get("tilt", "order"))
    if (auto v = rd.integer(*e, "order")) s.tilt.order = *v;
  if (auto e = grating ? require("tilt", "beta") : get("tilt", "beta"))
    if (auto v = rd.quantity(*e, Dimension::angle, "beta")) s.tilt.diffraction = *v;

  // [model]
  if (auto e = get("model", "kind")) {
    const auto v = lower(e->value);
    if (v == "exact") s.model.kind = ModelKind::exact;
    else if (v == "taylor") s.model.kind = ModelKind::taylor;
    else rd.error(e->line, "kind: expected exact or taylor");
  }
  if (auto e = get("model", "order"))
    if (auto v = rd.integer(*e, "order")) s.model.order = *v;
  if (auto e = get("model", "refraction_correction"))
    if (auto v = rd.boolean(*e, "refraction_correction")) s.model.refraction_correction = *v;

  // [grid]
  if (auto e = get("grid", "points"))
    if (auto v = rd.integer(*e, "points")) s.points = *v;
  if (auto e = get("grid", "half_span"); e && lower(e->value) != "auto")
    if (auto v = rd.quantity(*e, Dimension::frequency, "half_span")) s.half_span = *v;

  // [analysis]
  if (auto e = get("analysis", "run")) {
    for (const auto& item : split_list(e->value)) {
      const auto a = parse_analysis(lower(item));
      if (!a) rd.error(e->line, "unknown analysis '" + item + "'");
      else if (!s.has(*a)) s.analyses.push_back(*a);
    }
  }
  if (auto e = get("analysis", "sweep_parameter")) {
    if (auto p = parse_sweep_parameter(lower(e->value))) s.sweep_parameter = *p;
    else rd.error(e->line, "sweep_parameter: expected length, tilt or wavelength");
  }
  if (auto e = get("analysis", "sweep_values")) {
    const auto dim = s.sweep_parameter == SweepParameter::tilt ? Dimension::angle : Dimension::length;
    if (auto v = rd.quantities(*e, dim, "sweep_values")) s.sweep_values = *v;
  }
  if (auto e = get("analysis", "pump_bandwidths"))
    if (auto v = rd.quantities(*e, Dimension::length, "pump_bandwidths")) s.pump_bandwidths = *v;

  // [entanglement]
  if (auto e = get("entanglement", "ratios"))
    if (auto v = rd.quantities(*e, Dimension::dimensionless, "ratios")) s.ratios = *v;
  if (auto e = get("entanglement", "svd_points"))
    if (auto v = rd.integer(*e, "svd_points")) s.svd_points = *v;
  if (auto e = get("entanglement", "pump_bandwidth"))
    if (auto v = rd.quantity(*e, Dimension::frequency, "pump_bandwidth"))
      s.entanglement_pump_bandwidth = *v;

  // [output]
  if (auto e = get("output", "dir")) s.output_dir = e->value;

  if (errors.empty()) {
    for (auto d : validate(s)) errors.push_back(std::move(d));
  }
  if (errors.empty()) result.scenario = std::move(s);
  return result;
}

ParseResult load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read scenario " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string render(const Scenario& s) {
  std::ostringstream os;
  auto num = [](double v) { return format_number(v); };
  auto list = [&](const std::vector<double>& v, const char* unit) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out += (i ? ", " : "") + num(v[i]) + (unit[0] ? " " : "") + unit;
    return out;
  };
  os << "[crystal]\n";
  os << "material = " << s.material << '\n';
  os << "type = " << to_string(s.type) << '\n';
  os << "length = " << num(s.length) << " m\n";
  os << "cut_angle = " << (s.cut_angle ? num(*s.cut_angle) + " rad" : "auto") << '\n';
  os << "walkoff_sign = " << s.walkoff_sign << '\n';
  if (s.polarization)
    os << "polarization = " << pol_letter(s.polarization->pump) << ", "
       << pol_letter(s.polarization->signal) << ", " << pol_letter(s.polarization->idler) << '\n';
  os << "\n[pump]\n";
  os << "wavelength = " << num(s.pump.wavelength) << " m\n";
  os << "envelope = " << (s.pump.envelope == PumpEnvelope::cw ? "cw" : "gaussian") << '\n';
  if (s.pump.bandwidth != 0.0) os << "bandwidth = " << num(s.pump.bandwidth) << " rad/s\n";
  if (s.signal_wavelength) os << "\n[signal]\nwavelength = " << num(*s.signal_wavelength) << " m\n";
  os << "\n[tilt]\n";
  os << "mode = " << to_string(s.tilt.mode) << '\n';
  os << "angle = " << num(s.tilt.angle) << " rad\n";
  os << "lines_per_mm = " << num(s.tilt.lines_per_mm) << '\n';
  os << "order = " << s.tilt.order << '\n';
  os << "beta = " << num(s.tilt.diffraction) << " rad\n";
  os << "\n[model]\n";
  os << "kind = " << (s.model.kind == ModelKind::exact ? "exact" : "taylor") << '\n';
  os << "order = " << s.model.order << '\n';
  os << "refraction_correction = " << (s.model.refraction_correction ? "true" : "false") << '\n';
  os << "\n[grid]\n";
  os << "points = " << s.points << '\n';
  os << "half_span = " << (s.half_span ? num(*s.half_span) + " rad/s" : "auto") << '\n';
  os << "\n[analysis]\n";
  os << "run = ";
  for (std::size_t i = 0; i < s.analyses.size(); ++i) os << (i ? ", " : "") << to_string(s.analyses[i]);
  os << '\n';
  os << "sweep_parameter = " << to_string(s.sweep_parameter) << '\n';
  if (!s.sweep_values.empty())
    os << "sweep_values = "
       << list(s.sweep_values, s.sweep_parameter == SweepParameter::tilt ? "rad" : "m") << '\n';
  if (!s.pump_bandwidths.empty()) os << "pump_bandwidths = " << list(s.pump_bandwidths, "m") << '\n';
  os << "\n[entanglement]\n";
  if (!s.ratios.empty()) os << "ratios = " << list(s.ratios, "") << '\n';
  os << "svd_points = " << s.svd_points << '\n';
  if (s.entanglement_pump_bandwidth)
    os << "pump_bandwidth = " << num(*s.entanglement_pump_bandwidth) << " rad/s\n";
  os << "\n[output]\n";
  os << "dir = " << s.output_dir << '\n';
  return os.str();
}

}  // namespace spdc
