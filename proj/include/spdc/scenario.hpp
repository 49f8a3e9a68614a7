#pragma once

// Scenario files: `[section]` headers and `key = value` lines, `#` comments.
// Quantities take unit suffixes (nm, um, mm, m, deg, rad, fs, ps, s, Hz..THz,
// rad/s); cyclic frequency units are converted to rad/s. See README.md for
// the full key list.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/phase_matching.hpp"
#include "spdc/tilt_optics.hpp"

namespace spdc {

enum class Analysis {
  joint_spectrum,
  bandwidth,
  biphoton,
  entanglement,
  sweep,
  pump_sensitivity,
  entropy_table,
};

const char* to_string(Analysis a);
std::optional<Analysis> parse_analysis(std::string_view id);

enum class SweepParameter { length, tilt, wavelength };
const char* to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view id);

struct TiltRequest {
  TiltSource mode = TiltSource::none;
  double angle = 0.0;           // explicit ξ_p, rad
  double lines_per_mm = 0.0;  // pump grating groove density
  int order = 1;
  double diffraction = 0.0;  // β of the pump grating, rad
  bool operator==(const TiltRequest&) const = default;
};

struct Scenario {
  // [crystal]
  std::string material = "bbo";
  PmType type = PmType::type1;
  double length = 0.0;
  std::optional<double> cut_angle;  // solved from phase matching when absent
  int walkoff_sign = 1;
  std::optional<PolarizationMap> polarization;
  // [pump]
  PumpSpec pump;
  // [signal]
  std::optional<double> signal_wavelength;  // degenerate when absent
  // [tilt]
  TiltRequest tilt;
  // [model]
  ModelOptions model;
  // [grid]
  int points = 1024;
  std::optional<double> half_span;
  // [analysis]
  std::vector<Analysis> analyses;
  SweepParameter sweep_parameter = SweepParameter::length;
  std::vector<double> sweep_values;
  std::vector<double> pump_bandwidths;  // pump-sensitivity, m (FWHM in wavelength)
  // [entanglement]
  std::vector<double> ratios;           // B_c/B_p for the entropy table
  int svd_points = 256;
  std::optional<double> entanglement_pump_bandwidth;  // rad/s, overrides the cw default
  // [output]
  std::string output_dir = "out";

  bool has(Analysis a) const;
  double signal() const;  // resolved signal wavelength
  double idler() const;
  bool operator==(const Scenario&) const = default;
};

struct Diagnostic {
  int line = 0;  // 0 when not tied to a line
  std::string message;
};

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> errors;
  bool ok() const { return scenario.has_value(); }
  std::string message() const;
};

/// Parses and validates; every problem found is reported, not just the first.
ParseResult parse_scenario(std::string_view text);
ParseResult load_scenario(const std::string& path);

/// Semantic checks that do not depend on line numbers (also run by parse).
std::vector<Diagnostic> validate(const Scenario& s);

/// Canonical text form in SI units; parse_scenario(render(s)) == s.
std::string render(const Scenario& s);

}  // namespace spdc
