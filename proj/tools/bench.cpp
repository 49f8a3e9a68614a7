// Serial vs OpenMP timing of the 2D joint-spectrum kernel and the Schmidt SVD.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "spdc/dispersion.hpp"
#include "spdc/material_io.hpp"
#include "spdc/phase_matching.hpp"
#include "spdc/units.hpp"

using namespace spdc;

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 1024;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

  CrystalSpec c;
  c.material = find_material("bbo");
  c.type = PmType::type2;
  c.length = 2e-3;
  c.polarization = default_polarizations(c.material, c.type);
  c.cut_angle = phase_matching_angle(c.material, 405e-9, c.type, 810e-9, 810e-9).theta;
  PumpSpec pump;
  pump.wavelength = 405e-9;
  pump.envelope = PumpEnvelope::gaussian;
  pump.bandwidth = units::dlambda_to_domega(1e-9, 405e-9);
  const PhaseMatchingModel model(c, pump, TiltSetup::untilted(), 810e-9);
  const auto grid = default_grid(model, points);

  std::printf("joint spectrum %d x %d, %d threads available\n", points, points,
              omp_get_max_threads());
  const double ser = best_ms(reps, [&] { joint_spectrum(model, grid, Execution::serial); });
  const double par = best_ms(reps, [&] { joint_spectrum(model, grid, Execution::parallel); });
  std::printf("  serial   %10.2f ms\n  parallel %10.2f ms\n  speedup  %10.2f\n", ser, par,
              ser / par);

  const auto a = joint_spectrum(model, grid, Execution::serial);
  const auto b = joint_spectrum(model, grid, Execution::parallel);
  std::printf("  identical output: %s\n", a.amplitude == b.amplitude ? "yes" : "no");
  return 0;
}
