#pragma once

// Gratings, pulse-front tilt and the tilt-modified dispersion of each wave.

#include <array>
#include <string>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

/// Groove densities (lines/mm) searched when designing the second grating.
inline constexpr std::array<int, 5> kGrooveCatalog = {300, 600, 1200, 1800, 2400};

/// Convention: sin θ + sin β = m λ0 / d.
struct GratingSpec {
  double spacing = 0.0;      // d, m
  int order = 1;             // m
  double incidence = 0.0;    // θ, rad
  double diffraction = 0.0;  // β, rad
  double wavelength = 0.0;   // λ0, m

  /// Builds a grating from d, m, β and λ0, solving the grating equation for θ.
  static GratingSpec from_diffraction(double spacing, int order, double diffraction,
                                      double wavelength);
  double equation_residual() const;
  /// Throws geometry if the grating equation fails (1e-9) or |β| >= π/2.
  void validate() const;
};

enum class TiltSource { none, explicit_tilt, optimal, grating_pair };
const char* to_string(TiltSource s);

struct TiltSetup {
  double xi_p = 0.0;  // pump pulse-front tilt, signed, rad
  double xi_s = 0.0;  // downconverted-beam tilt, signed, rad
  double alpha_p = 1.0;
  double alpha_s = 1.0;
  TiltSource source = TiltSource::none;

  static TiltSetup untilted() { return {}; }
  static TiltSetup with_tilt(double xi_p, TiltSource source = TiltSource::explicit_tilt);
  bool tilted() const { return xi_p != 0.0; }
  bool operator==(const TiltSetup&) const = default;
};

struct EffectiveDispersion {
  double N_eff = 0.0;  // s/m
  double g_eff = 0.0;  // s^2/m
  DispersionSample base;
  double xi_p = 0.0;
};

/// ε = m / (d cos β), in rad per metre of wavelength.
double angular_dispersion(const GratingSpec& grating);

/// ξ = atan(-λ0 ε), sign retained.
double tilt_from_dispersion(double epsilon, double lambda0);

/// α = cos θ / cos β.
double magnification(double theta, double beta);

struct MatchedPair {
  GratingSpec grating;  // second grating, for the downconverted beam
  TiltSetup setup;
  bool custom_density = false;  // no catalog groove density fits the pair exactly
  std::vector<std::string> notes;
};

/// Designs the grating for the downconverted beam so that
/// tan ξ_s = -tan ξ_p / α_p and α_p α_s = 1 hold at `lambda_s`.
MatchedPair matched_pair(const GratingSpec& pump_grating, double lambda_s);

/// Relative residuals of the two matching conditions (0 when exactly matched).
std::array<double, 2> matching_residuals(const TiltSetup& setup);

/// N' = N + tan ξ tan ρ / c, g' = g - (tan ξ / c)^2 / k. `walkoff_sign` orients ρ.
EffectiveDispersion effective_dispersion(const DispersionSample& base, double xi_p,
                                         int walkoff_sign = 1);

/// Tilt equalising N'_s and N'_i. Throws degenerate when tan ρ_s == tan ρ_i.
double optimal_tilt_type2(const DispersionSample& signal, const DispersionSample& idler,
                          int walkoff_sign = 1);

/// Tilt zeroing g'_s. Throws domain when g_s <= 0.
double optimal_tilt_type1(const DispersionSample& signal);

/// ω-derivatives (orders 0..4) of the longitudinal wavenumber of a tilted wave,
///   k_z(Ω) = sqrt(k(ω0 + Ω)^2 - (a Ω)^2) + tan ρ · a Ω,   a = tan ξ / c,
/// from the on-axis derivatives `k`. Orders 1 and 2 equal N' and g' exactly.
std::array<double, 5> tilted_wavenumber_derivatives(const std::array<double, 5>& k,
                                                    double tan_xi, double tan_rho);

}  // namespace spdc
