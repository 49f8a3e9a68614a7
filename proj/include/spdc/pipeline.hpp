#pragma once

// Scenario execution: dispersion -> tilt -> joint spectrum -> analyses.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spdc/biphoton.hpp"
#include "spdc/entanglement.hpp"
#include "spdc/phase_matching.hpp"
#include "spdc/scenario.hpp"

namespace spdc {

/// Scenario with the material loaded, the cut angle solved and the tilt resolved.
struct ResolvedSetup {
  CrystalSpec crystal;
  PumpSpec pump;
  double lambda_s = 0.0;
  double lambda_i = 0.0;
  TiltSetup tilt;
  std::optional<GratingSpec> pump_grating;
  std::optional<MatchedPair> gratings;
  ModelOptions model;
  std::vector<std::string> notes;
};

ResolvedSetup resolve(const Scenario& s);

struct SpectrumRun {
  PhaseMatchingModel model;
  JointSpectrum spectrum;
};

/// Builds the model and evaluates the joint spectrum; `points` overrides the
/// scenario grid size, `untilted` drops the tilt (baseline runs).
SpectrumRun compute_spectrum(const ResolvedSetup& setup, const Scenario& s,
                             std::optional<int> points = std::nullopt, bool untilted = false);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  std::optional<int> grid_points;
  bool verbose = false;
  std::ostream* log = nullptr;
};

struct RunReport {
  std::string scenario_text;
  std::string scenario_hash;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> manifest;  // files written, relative to out_dir
  std::string engine_version = SPDC_VERSION;
  double elapsed_ms = 0.0;
  std::filesystem::path out_dir;

  nlohmann::ordered_json to_json() const;
};

/// Runs every requested analysis and writes CSV, plot scripts and report.json.
/// Module errors are rethrown with the failing stage prefixed.
RunReport run(const Scenario& s, const RunOptions& options = {});

/// One row per value (>= 3) in sweep.csv; a power-law exponent is fitted for length.
RunReport sweep(const Scenario& s, SweepParameter parameter, const std::vector<double>& values,
                const RunOptions& options = {});

/// Scenario with one parameter replaced, as used by sweep().
Scenario with_parameter(const Scenario& s, SweepParameter parameter, double value);

}  // namespace spdc
