#pragma once

// Frequency entanglement: Schmidt spectra of discretised joint spectra and
// of the double-Gaussian model.

#include <optional>
#include <string>
#include <vector>

#include "spdc/phase_matching.hpp"

namespace spdc {

/// Φ ∝ exp(-(Ωs+Ωi)²/B_p²) exp(-(Ωs-Ωi)²/B_c²).
struct DoubleGaussianModel {
  double pump_bandwidth = 0.0;      // B_p, rad/s
  double biphoton_bandwidth = 0.0;  // B_c, rad/s

  double ratio() const { return biphoton_bandwidth / pump_bandwidth; }
  void validate() const;
};

struct SchmidtSpectrum {
  std::vector<double> coefficients;  // leading λ_n, descending
  double K = 1.0;
  double E = 0.0;       // ebits
  double total = 1.0;   // Σ λ_n over the retained modes
  long long modes = 0;  // number of λ_n >= cutoff (may exceed coefficients.size())
  bool truncated = false;  // every singular value kept: grid too coarse or narrow
  std::vector<std::string> flags;
};

inline constexpr double kSchmidtCutoff = 1e-12;

/// SVD of A_ij = Φ_ij h (square-root cell-area weights). 2D spectra only.
SchmidtSpectrum schmidt_decompose(const JointSpectrum& js);

/// Closed-form geometric spectrum: λ_n = (1-μ²) μ^(2n), μ = (r-1)/(r+1),
/// r = B_c/B_p. At most `keep` leading coefficients are materialised.
SchmidtSpectrum gaussian_entropy(const DoubleGaussianModel& model, int keep = 64);

/// Double-Gaussian joint spectrum on a grid resolving both bandwidths.
JointSpectrum double_gaussian_spectrum(const DoubleGaussianModel& model, int points);

struct ModelConversion {
  DoubleGaussianModel model;
  std::vector<std::string> warnings;
};

/// B_c = 2 · 2πcΔλ_s/λ_s² (width in the Ω_s - Ω_i variable); B_p from the pump,
/// 2π·5 MHz for cw. Throws degenerate for a zero width.
ModelConversion bandwidth_to_model(const BandwidthReport& report, const PumpSpec& pump);
ModelConversion bandwidth_to_model(double dlambda_s, double lambda_s0, const PumpSpec& pump);

inline constexpr double kDefaultCwBandwidth = 2.0 * 3.14159265358979323846 * 5e6;

}  // namespace spdc
