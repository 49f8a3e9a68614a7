#include "spdc/phase_matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/profile.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

constexpr double kSincHalfMax = 1.3915573812101;  // sinc²(x) = 1/2

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

int index(WaveRole r) { return static_cast<int>(r); }

}  // namespace

double PumpSpec::omega() const { return units::wavelength_to_omega(wavelength); }

double PumpSpec::amplitude(double omega_p) const {
  if (envelope == PumpEnvelope::cw) return 1.0;
  return std::exp(-2.0 * std::log(2.0) * omega_p * omega_p / (bandwidth * bandwidth));
}

void PumpSpec::validate() const {
  if (!(wavelength > 0.0)) fail(ErrorCode::validation, "pump wavelength must be positive");
  if (envelope == PumpEnvelope::gaussian && !(bandwidth > 0.0))
    fail(ErrorCode::validation, "gaussian pump needs B_p > 0");
}

std::vector<double> FrequencyGrid::nodes() const {
  std::vector<double> x(points);
  for (int n = 0; n < points; ++n) x[n] = node(n);
  return x;
}

void FrequencyGrid::validate() const {
  if (!(half_span > 0.0)) fail(ErrorCode::validation, "grid half-span must be positive");
  if (points < 8 || !std::has_single_bit(static_cast<unsigned>(points)))
    fail(ErrorCode::validation, "grid points must be a power of two >= 8");
  if (!(omega_s0 > 0.0) || !(omega_i0 > 0.0))
    fail(ErrorCode::validation, "grid central frequencies must be positive");
}

PhaseMatchingModel::PhaseMatchingModel(const CrystalSpec& crystal, const PumpSpec& pump,
                                       const TiltSetup& tilt, double lambda_s,
                                       ModelOptions options)
    : crystal_(crystal), pump_(pump), tilt_(tilt), options_(options) {
  crystal_.validate();
  pump_.validate();
  if (options_.kind == ModelKind::taylor && (options_.order < 2 || options_.order > 4))
    fail(ErrorCode::unsupported, "Taylor order must be 2, 3 or 4");
  if (options_.kind == ModelKind::exact && tilt_.tilted())
    fail(ErrorCode::unsupported, "the exact model is untilted only; use a Taylor order");
  omega0_[0] = pump_.omega();
  omega0_[1] = units::wavelength_to_omega(lambda_s);
  omega0_[2] = omega0_[0] - omega0_[1];
  if (!(omega0_[2] > 0.0))
    fail(ErrorCode::validation, "signal wavelength must exceed the pump wavelength");

  std::array<std::array<double, 5>, 3> raw{};
  for (int r = 0; r < 3; ++r) {
    const auto pol = crystal_.polarization[static_cast<WaveRole>(r)];
    raw[r] = wavenumber_derivatives(crystal_.material, pol, crystal_.cut_angle, omega0_[r]);
    samples_[r] = dispersion_sample(crystal_.material, pol, crystal_.cut_angle, omega0_[r]);
  }
  tan_xi_ = std::tan(tilt_.xi_p);
  if (options_.refraction_correction) tan_xi_ /= kSpeedOfLight * samples_[0].N;
  for (int r = 0; r < 3; ++r) {
    const double tan_rho = crystal_.walkoff_sign * std::tan(samples_[r].rho);
    coeffs_[r] = tilted_wavenumber_derivatives(raw[r], tan_xi_, tan_rho);
  }
}

double PhaseMatchingModel::omega(WaveRole role) const { return omega0_[index(role)]; }

const std::array<double, 5>& PhaseMatchingModel::coefficients(WaveRole role) const {
  return coeffs_[index(role)];
}

const DispersionSample& PhaseMatchingModel::sample(WaveRole role) const {
  return samples_[index(role)];
}

EffectiveDispersion PhaseMatchingModel::effective(WaveRole role) const {
  return effective_dispersion(samples_[index(role)], std::atan(tan_xi_), crystal_.walkoff_sign);
}

double PhaseMatchingModel::wave_k(WaveRole role, double detuning) const {
  const int r = index(role);
  if (options_.kind == ModelKind::exact) {
    if (detuning == 0.0) return coeffs_[r][0];
    const double w = omega0_[r] + detuning;
    if (!(w > 0.0)) fail(ErrorCode::domain, "detuning reaches zero frequency");
    const auto pol = crystal_.polarization[role];
    return wavenumber(
        refractive_index(crystal_.material, pol, crystal_.cut_angle, units::omega_to_wavelength(w)),
        w);
  }
  static constexpr double kInvFactorial[] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
  double acc = 0.0;
  for (int m = options_.order; m >= 0; --m) acc = acc * detuning + coeffs_[r][m] * kInvFactorial[m];
  return acc;
}

double PhaseMatchingModel::delta_k(double omega_s, double omega_i) const {
  return wave_k(WaveRole::pump, omega_s + omega_i) - wave_k(WaveRole::signal, omega_s) -
         wave_k(WaveRole::idler, omega_i);
}

double PhaseMatchingModel::phase_sum(double omega_s, double omega_i) const {
  return wave_k(WaveRole::pump, omega_s + omega_i) + wave_k(WaveRole::signal, omega_s) +
         wave_k(WaveRole::idler, omega_i);
}

std::string PhaseMatchingModel::tag() const {
  if (options_.kind == ModelKind::exact) return "exact-untilted";
  std::string t = tilt_.tilted() ? "tilted-taylor-order-" : "taylor-order-";
  return t + std::to_string(options_.order);
}

double delta_k(const PhaseMatchingModel& model, double omega_s, double omega_i) {
  return model.delta_k(omega_s, omega_i);
}

double phase_sum(const PhaseMatchingModel& model, double omega_s, double omega_i) {
  return model.phase_sum(omega_s, omega_i);
}

namespace {

void normalise(std::vector<std::complex<double>>& a) {
  double peak = 0.0;
  for (const auto& z : a) peak = std::max(peak, std::abs(z));
  if (peak > 0.0)
    for (auto& z : a) z /= peak;
}

}  // namespace

JointSpectrum joint_spectrum(const PhaseMatchingModel& model, const FrequencyGrid& grid,
                             Execution exec) {
  grid.validate();
  const int n = grid.points;
  const double L = model.crystal().length;
  const bool cw = model.pump().envelope == PumpEnvelope::cw;

  JointSpectrum js;
  js.grid = grid;
  js.cw = cw;
  js.model_tag = model.tag();
  js.length = L;

  std::vector<double> ks(n), ki(n);
  for (int i = 0; i < n; ++i) {
    ks[i] = model.wave_k(WaveRole::signal, grid.node(i));
    ki[i] = model.wave_k(WaveRole::idler, grid.node(i));
  }

  if (cw) {
    const double kp = model.wave_k(WaveRole::pump, 0.0);
    js.amplitude.resize(n);
    const bool par = exec == Execution::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) {
      const double dk = kp - ks[i] - ki[n - 1 - i];
      const double sk = kp + ks[i] + ki[n - 1 - i];
      js.amplitude[i] = std::polar(sinc(0.5 * dk * L), 0.5 * sk * L);
    }
  } else {
    // Ω_s + Ω_i = (i + j - (N-1)) h on the half-offset grid
    const double h = grid.spacing();
    std::vector<double> kp(2 * n - 1), ep(2 * n - 1);
    for (int m = 0; m < 2 * n - 1; ++m) {
      const double wp = (m - (n - 1)) * h;
      kp[m] = model.wave_k(WaveRole::pump, wp);
      ep[m] = model.pump().amplitude(wp);
    }
    js.amplitude.resize(static_cast<std::size_t>(n) * n);
    const bool par = exec == Execution::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) {
      auto* row = js.amplitude.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        const double dk = kp[i + j] - ks[i] - ki[j];
        const double sk = kp[i + j] + ks[i] + ki[j];
        row[j] = std::polar(ep[i + j] * sinc(0.5 * dk * L), 0.5 * sk * L);
      }
    }
  }
  normalise(js.amplitude);

  const auto zeros = first_sinc_zero(model, grid.half_span);
  if (zeros[0] == 0.0 || zeros[1] == 0.0)
    js.warnings.push_back("grid span does not contain the first sinc zero");
  return js;
}

JointSpectrum tabulate(const FrequencyGrid& grid, bool cw,
                       const std::function<std::complex<double>(double, double)>& f,
                       std::string tag) {
  grid.validate();
  JointSpectrum js;
  js.grid = grid;
  js.cw = cw;
  js.model_tag = std::move(tag);
  const int n = grid.points;
  if (cw) {
    js.amplitude.resize(n);
    for (int i = 0; i < n; ++i) js.amplitude[i] = f(grid.node(i), -grid.node(i));
  } else {
    js.amplitude.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        js.amplitude[static_cast<std::size_t>(i) * n + j] = f(grid.node(i), grid.node(j));
  }
  normalise(js.amplitude);
  return js;
}

std::array<double, 2> first_sinc_zero(const PhaseMatchingModel& model, double limit) {
  const double L = model.crystal().length;
  std::array<double, 2> out{0.0, 0.0};
  constexpr int kScan = 4096;
  for (int side = 0; side < 2; ++side) {
    const double s = side == 0 ? -1.0 : 1.0;
    auto phase = [&](double u) { return 0.5 * L * std::abs(model.delta_k(s * u, -s * u)); };
    try {
      double prev = 0.0;
      for (int k = 1; k <= kScan; ++k) {
        const double u = limit * k / kScan;
        if (phase(u) >= kPi) {
          double a = prev, b = u;
          for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (a + b);
            (phase(mid) >= kPi ? b : a) = mid;
          }
          out[side] = b;
          break;
        }
        prev = u;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::domain) throw;
    }
  }
  return out;
}

namespace {

// Smallest u > 0 with |b u + a u²| = x.
double smallest_crossing(double a, double b, double x) {
  double best = 0.0;
  for (double rhs : {x, -x}) {
    if (a == 0.0) {
      if (b != 0.0 && rhs / b > 0.0) best = best == 0.0 ? rhs / b : std::min(best, rhs / b);
      continue;
    }
    const double disc = b * b + 4.0 * a * rhs;
    if (disc < 0.0) continue;
    for (double sg : {-1.0, 1.0}) {
      const double u = (-b + sg * std::sqrt(disc)) / (2.0 * a);
      if (u > 0.0) best = best == 0.0 ? u : std::min(best, u);
    }
  }
  return best;
}

}  // namespace

FrequencyGrid default_grid(const PhaseMatchingModel& model, int points,
                           std::vector<std::string>* warnings) {
  FrequencyGrid g;
  g.omega_s0 = model.omega(WaveRole::signal);
  g.omega_i0 = model.omega(WaveRole::idler);
  g.points = points;

  // untilted second-order antidiagonal mismatch  -(N_s - N_i) Ω - (g_s + g_i) Ω² / 2
  const auto& s = model.sample(WaveRole::signal);
  const auto& i = model.sample(WaveRole::idler);
  const double b = -(s.N - i.N);
  const double a = -0.5 * (s.g + i.g);
  const double x = 2.0 * kSincHalfMax / model.crystal().length;
  const double est = smallest_crossing(a, b, x) + smallest_crossing(a, -b, x);

  double cap = 0.95 * std::min(g.omega_s0, g.omega_i0);
  if (model.options().kind == ModelKind::exact) {
    const auto range = model.crystal().material.validity();
    const double w_lo = units::wavelength_to_omega(range.max);
    const double w_hi = units::wavelength_to_omega(range.min);
    for (double w0 : {g.omega_s0, g.omega_i0}) cap = std::min({cap, w0 - w_lo, w_hi - w0});
    if (model.pump().envelope != PumpEnvelope::cw) {
      const double wp = model.omega(WaveRole::pump);
      cap = std::min({cap, 0.5 * (wp - w_lo), 0.5 * (w_hi - wp)});
    }
  }
  double span = est > 0.0 ? 4.0 * est : 0.1 * g.omega_s0;
  if (model.pump().envelope == PumpEnvelope::gaussian)
    span = std::max(span, 1.5 * model.pump().bandwidth);
  span = std::min(span, cap);
  for (;;) {
    const auto z = first_sinc_zero(model, span);
    if (z[0] > 0.0 && z[1] > 0.0) break;
    if (span >= cap) {
      if (warnings) warnings->push_back("grid span capped before reaching the first sinc zero");
      break;
    }
    span = std::min(2.0 * span, cap);
  }
  g.half_span = span;
  return g;
}

double lambda_minus(const FrequencyGrid& grid, double omega_s) {
  const double ls = units::omega_to_wavelength(grid.omega_s0 + omega_s);
  const double li = units::omega_to_wavelength(grid.omega_i0 - omega_s);
  const double ls0 = units::omega_to_wavelength(grid.omega_s0);
  const double li0 = units::omega_to_wavelength(grid.omega_i0);
  return ((ls - ls0) - (li - li0)) / std::sqrt(2.0);
}

BandwidthReport bandwidth_report(const JointSpectrum& js) {
  const auto& g = js.grid;
  const int n = g.points;
  const auto x = g.nodes();
  std::vector<double> marginal(n), anti(n);
  if (js.cw) {
    for (int i = 0; i < n; ++i) marginal[i] = anti[i] = std::norm(js.amplitude[i]);
  } else {
    const double h = g.spacing();
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += std::norm(js.at(i, j));
      marginal[i] = acc * h;
      anti[i] = std::norm(js.at(i, n - 1 - i));
    }
  }
  const auto singles = main_lobe_half_max(x, marginal);
  const auto diag = main_lobe_half_max(x, anti);
  if (!singles || !diag) fail(ErrorCode::truncated, "spectral main lobe reaches the grid edge");

  BandwidthReport r;
  r.lambda_s0 = units::omega_to_wavelength(g.omega_s0);
  r.lambda_i0 = units::omega_to_wavelength(g.omega_i0);
  auto ls = [&](double w) { return units::omega_to_wavelength(g.omega_s0 + w); };
  r.singles_fwhm = ls(singles->left) - ls(singles->right);
  r.singles_omega = singles->width();
  r.antidiagonal_fwhm = std::abs(lambda_minus(g, diag->right) - lambda_minus(g, diag->left));
  r.antidiagonal_omega = std::sqrt(2.0) * diag->width();
  r.singles_regions = widest_half_max(x, marginal).regions;
  return r;
}

}  // namespace spdc
