#pragma once

// Phase mismatch, phase sum and the joint spectral amplitude on a grid.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/tilt_optics.hpp"

namespace spdc {

enum class PumpEnvelope { cw, gaussian };

struct PumpSpec {
  double wavelength = 0.0;  // m
  PumpEnvelope envelope = PumpEnvelope::cw;
  double bandwidth = 0.0;  // rad/s, intensity FWHM (gaussian only)

  double omega() const;
  /// Spectral amplitude E(Ω_p); exp(-2 ln2 Ω²/B²) for gaussian, 1 for cw.
  double amplitude(double omega_p) const;
  void validate() const;
  bool operator==(const PumpSpec&) const = default;
};

/// Symmetric half-offset grid: Ω_n = (n - (N-1)/2) h with h = 2 S / N.
struct FrequencyGrid {
  double omega_s0 = 0.0;
  double omega_i0 = 0.0;
  double half_span = 0.0;  // S, rad/s
  int points = 1024;

  double spacing() const { return 2.0 * half_span / points; }
  double node(int n) const { return (n - 0.5 * (points - 1)) * spacing(); }
  std::vector<double> nodes() const;
  /// Throws validation unless S > 0 and N is a power of two >= 8.
  void validate() const;
};

enum class ModelKind { exact, taylor };

struct ModelOptions {
  ModelKind kind = ModelKind::taylor;
  int order = 4;  // Taylor order, 2..4
  /// Divide tan ξ_p by the pump group index (refraction of the tilt at the
  /// crystal face). Off by default.
  bool refraction_correction = false;
  bool operator==(const ModelOptions&) const = default;
};

/// Longitudinal wavenumbers of the three waves about their central
/// frequencies. Exact mode evaluates k(ω) directly (untilted only); Taylor
/// mode uses the derivatives of the tilted dispersion relation of each wave.
class PhaseMatchingModel {
 public:
  PhaseMatchingModel(const CrystalSpec& crystal, const PumpSpec& pump, const TiltSetup& tilt,
                     double lambda_s, ModelOptions options = {});

  /// k_j(ω_j0 + Ω), rad/m.
  double wave_k(WaveRole role, double detuning) const;
  double delta_k(double omega_s, double omega_i) const;
  double phase_sum(double omega_s, double omega_i) const;

  /// Taylor coefficients (derivatives, orders 0..4) of each wave after tilt.
  const std::array<double, 5>& coefficients(WaveRole role) const;
  const DispersionSample& sample(WaveRole role) const;
  EffectiveDispersion effective(WaveRole role) const;

  std::string tag() const;
  double omega(WaveRole role) const;
  const CrystalSpec& crystal() const { return crystal_; }
  const PumpSpec& pump() const { return pump_; }
  const TiltSetup& tilt() const { return tilt_; }
  const ModelOptions& options() const { return options_; }
  double tan_xi() const { return tan_xi_; }

 private:
  CrystalSpec crystal_;
  PumpSpec pump_;
  TiltSetup tilt_;
  ModelOptions options_;
  double tan_xi_ = 0.0;
  std::array<double, 3> omega0_{};
  std::array<DispersionSample, 3> samples_{};
  std::array<std::array<double, 5>, 3> coeffs_{};
};

double delta_k(const PhaseMatchingModel& model, double omega_s, double omega_i);
double phase_sum(const PhaseMatchingModel& model, double omega_s, double omega_i);

struct JointSpectrum {
  FrequencyGrid grid;
  /// cw: N samples on Ω_i = -Ω_s. Otherwise N×N row-major [signal][idler].
  bool cw = true;
  std::vector<std::complex<double>> amplitude;
  std::string model_tag;
  std::vector<std::string> warnings;
  double length = 0.0;  // m

  const std::complex<double>& at(int i, int j) const {
    return amplitude[static_cast<std::size_t>(i) * grid.points + j];
  }
};

enum class Execution { serial, parallel };

JointSpectrum joint_spectrum(const PhaseMatchingModel& model, const FrequencyGrid& grid,
                             Execution exec = Execution::parallel);

/// Fills a spectrum from an arbitrary amplitude function and rescales to max |Φ| = 1.
JointSpectrum tabulate(const FrequencyGrid& grid, bool cw,
                       const std::function<std::complex<double>(double, double)>& f,
                       std::string tag = "tabulated");

/// Smallest Ω > 0 with |Δk(±Ω, ∓Ω)| L / 2 >= π on each side of the antidiagonal,
/// searched up to `limit`. Returns 0 when a side never reaches π.
std::array<double, 2> first_sinc_zero(const PhaseMatchingModel& model, double limit);

/// Grid with S = 4× the estimated untilted FWHM, doubled until the first sinc
/// zero lies inside (and S >= 1.5 B_p for gaussian pumps). Warnings are appended
/// when the span had to be capped.
FrequencyGrid default_grid(const PhaseMatchingModel& model, int points,
                           std::vector<std::string>* warnings = nullptr);

struct BandwidthReport {
  double singles_fwhm = 0.0;       // Δλ_s, m
  double antidiagonal_fwhm = 0.0;  // ΔΛ₋, m
  double singles_omega = 0.0;      // rad/s
  double antidiagonal_omega = 0.0; // rad/s, in the (Ω_s - Ω_i)/√2 variable
  double lambda_s0 = 0.0;
  double lambda_i0 = 0.0;
  int singles_regions = 1;  // runs above half maximum in the singles profile
  std::string conversion = "exact wavelength mapping";
};

/// Throws truncated if a main lobe reaches the grid edge.
BandwidthReport bandwidth_report(const JointSpectrum& js);

/// Λ₋ for a point on the antidiagonal, m.
double lambda_minus(const FrequencyGrid& grid, double omega_s);

}  // namespace spdc
