#pragma once

// Temporal biphoton Ψ(τ), τ = t1 - t2, from a cw joint spectrum.

#include <complex>
#include <vector>

#include "spdc/phase_matching.hpp"

namespace spdc {

struct BiphotonWaveform {
  std::vector<double> tau;  // s, uniform; intensity centroid at 0
  std::vector<std::complex<double>> psi;
  std::vector<double> intensity;  // |Ψ|², unit integral
  double group_delay = 0.0;       // s, centroid removed from the time axis
  double rms = 0.0;               // s, of |Ψ|²
  double amplitude_rms = 0.0;     // s, of |Ψ| (alternative convention)
  double fwhm = 0.0;              // s
  bool multi_lobe = false;
  double spectral_norm = 0.0;  // ∫|Φ|² dΩ of the tapered input
  double temporal_norm = 0.0;  // ∫|Ψ|² dτ before normalisation
};

struct TransformOptions {
  int padding = 16;  // zero-padding factor, >= 4
  int recentre_iterations = 3;
  /// Fraction of each half-span rolled off by a raised cosine before the
  /// transform, so the grid edge does not add a 1/τ² tail to |Ψ|².
  double edge_taper = 0.1;
};

/// Raised-cosine weight for detuning Ω on a grid of half-span S.
double edge_window(double omega, double half_span, double fraction);

/// Ψ(τ) = (2π)^(-1/2) ∫ Φ(Ω) exp(-iΩτ) dΩ along the antidiagonal.
/// Throws unsupported for 2D spectra and truncated when the lobe reaches the edge.
BiphotonWaveform temporal_biphoton(const JointSpectrum& js, TransformOptions options = {});

struct CorrelationMetrics {
  double rms = 0.0;
  double fwhm = 0.0;
  bool multi_lobe = false;  // fwhm is the widest contiguous half-max run
};

CorrelationMetrics correlation_metrics(const BiphotonWaveform& w);

/// rms width with the actual phase over rms width with the phase replaced by
/// its least-squares line over the FWHM support of |Φ|².
double transform_limit_ratio(const JointSpectrum& js, TransformOptions options = {});

/// Copy of `js` with exp(i(a + bΩ)) applied, Ω the signal detuning.
JointSpectrum with_linear_phase(const JointSpectrum& js, double a, double b);

}  // namespace spdc
