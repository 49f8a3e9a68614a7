#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spdc/error.hpp"
#include "spdc/pipeline.hpp"
#include "spdc/scenario.hpp"
#include "spdc/units.hpp"

namespace {

enum Exit { ok = 0, invalid = 1, numerical = 2, io = 3 };

int exit_code(spdc::ErrorCode c) {
  switch (c) {
    case spdc::ErrorCode::validation: return invalid;
    case spdc::ErrorCode::io: return io;
    default: return numerical;
  }
}

std::vector<double> parse_values(const std::string& list, spdc::SweepParameter p) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto q = spdc::units::parse_quantity(item);
    if (!q) spdc::fail(spdc::ErrorCode::validation, "bad sweep value '" + item + "'");
    const auto want = p == spdc::SweepParameter::tilt ? spdc::units::Dimension::angle
                                                      : spdc::units::Dimension::length;
    if (q->dimension != want && q->dimension != spdc::units::Dimension::dimensionless)
      spdc::fail(spdc::ErrorCode::validation, "sweep value '" + item + "' must be a " +
                                                  spdc::units::to_string(want));
    out.push_back(q->value);
  }
  return out;
}

spdc::Scenario load(const std::string& path) {
  auto r = spdc::load_scenario(path);
  if (!r.ok()) throw spdc::Error(spdc::ErrorCode::validation, r.message());
  return *r.scenario;
}

void print_summary(const spdc::RunReport& rep) {
  std::cout << "scenario " << rep.scenario_hash << ", " << rep.manifest.size() << " files in "
            << rep.out_dir.string() << " (" << static_cast<long>(rep.elapsed_ms) << " ms)\n";
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << '\n';
  std::cout << rep.summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPDC joint-spectrum engine"};
  app.set_version_flag("--version", std::string(SPDC_VERSION));
  app.require_subcommand(1);

  std::string file, out, values, param = "length";
  int grid = 0;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "run every analysis listed in a scenario");
  run->add_option("scenario", file, "scenario file")->required();
  run->add_option("--out", out, "output directory (overrides [output] dir)");
  run->add_option("--grid", grid, "grid points per axis (power of two, >= 256)");
  run->add_flag("--verbose", verbose, "log progress and extra metrics");

  auto* sw = app.add_subcommand("sweep", "tabulate bandwidths against one parameter");
  sw->add_option("scenario", file, "scenario file")->required();
  sw->add_option("--param", param, "length | tilt | wavelength")
      ->check(CLI::IsMember({"length", "tilt", "wavelength"}));
  sw->add_option("--values", values, "comma separated values with units, e.g. 1mm,2mm,4mm")
      ->required();
  sw->add_option("--out", out, "output directory");
  sw->add_option("--grid", grid, "grid points per axis");
  sw->add_flag("--verbose", verbose, "log progress");

  auto* val = app.add_subcommand("validate", "parse and check a scenario without running it");
  val->add_option("scenario", file, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : invalid;
  }

  try {
    const auto scenario = load(file);
    if (*val) {
      std::cout << "ok: " << file << '\n';
      return ok;
    }
    spdc::RunOptions opts;
    if (!out.empty()) opts.out_dir = out;
    if (grid) opts.grid_points = grid;
    opts.verbose = verbose;
    if (verbose) opts.log = &std::cerr;
    spdc::RunReport rep;
    if (*run) {
      rep = spdc::run(scenario, opts);
    } else {
      const auto p = *spdc::parse_sweep_parameter(param);
      rep = spdc::sweep(scenario, p, parse_values(values, p), opts);
    }
    print_summary(rep);
    return ok;
  } catch (const spdc::Error& e) {
    std::cerr << "error (" << spdc::to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return numerical;
  }
}
