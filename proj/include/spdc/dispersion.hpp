#pragma once

// Crystal optics: Sellmeier evaluation, index ellipsoid, wavenumber
// derivatives, Poynting walk-off and collinear phase-matching cut angles.

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace spdc {

enum class SellmeierForm {
  sellmeier,        // n^2 = A + sum_i B_i λ^2 / (λ^2 - C_i);   coeffs A, B1, C1, B2, C2, ...
  pole_polynomial,  // n^2 = A + B / (λ^2 - C) + sum_j D_j λ^(2j); coeffs A, B, C, D1, D2, ...
  constant,         // n = c0
};

const char* to_string(SellmeierForm form);
std::optional<SellmeierForm> parse_sellmeier_form(const std::string& id);

struct WavelengthRange {
  double min = 0.0;  // m
  double max = 0.0;  // m
  bool contains(double lambda) const { return lambda >= min && lambda <= max; }
};

/// One principal-axis dispersion law. Coefficients assume λ in micrometres.
struct SellmeierSet {
  std::string material;
  SellmeierForm form = SellmeierForm::sellmeier;
  std::vector<double> coefficients;
  WavelengthRange validity;

  /// Index at vacuum wavelength `lambda` (m). Throws domain outside the
  /// validity range and data when the formula yields n^2 <= 0.
  double index(double lambda) const;
};

enum class Polarization { ordinary, extraordinary };
enum class PmType { type1, type2 };
enum class WaveRole { pump, signal, idler };

const char* to_string(Polarization p);
const char* to_string(PmType t);
const char* to_string(WaveRole r);

struct UniaxialMaterial {
  std::string name;
  std::string reference;
  SellmeierSet ordinary;
  SellmeierSet extraordinary;

  WavelengthRange validity() const;
  /// n_e < n_o at the middle of the validity range.
  bool negative() const;
  /// Throws data if any index in the validity range leaves (1, 4).
  void validate() const;
};

struct PolarizationMap {
  Polarization pump = Polarization::extraordinary;
  Polarization signal = Polarization::ordinary;
  Polarization idler = Polarization::ordinary;

  Polarization operator[](WaveRole role) const;
  bool operator==(const PolarizationMap&) const = default;
};

/// Negative crystals: type-I e->oo, type-II e->eo. Positive: o->ee, o->oe.
PolarizationMap default_polarizations(const UniaxialMaterial& material, PmType type);

struct CrystalSpec {
  UniaxialMaterial material;
  double cut_angle = 0.0;  // rad, angle between optic axis and propagation
  double length = 0.0;     // m
  PmType type = PmType::type1;
  PolarizationMap polarization;
  /// Orientation of the walk-off relative to the tilt plane (+1 or -1).
  int walkoff_sign = 1;

  /// Checks L > 0, 0 <= cut <= π/2 and the type/polarization pairing.
  void validate() const;
};

/// Optical properties of one wave at one frequency, on axis (q = 0).
struct DispersionSample {
  double omega = 0.0;  // rad/s
  double n = 0.0;
  double k = 0.0;    // rad/m
  double N = 0.0;    // s/m, dk/dω
  double g = 0.0;    // s^2/m, d^2k/dω^2
  double rho = 0.0;  // rad, walk-off (>= 0)
};

/// n_o(λ) for ordinary waves; n_e(θ, λ) from the index ellipsoid otherwise.
double refractive_index(const UniaxialMaterial& material, Polarization pol, double theta,
                        double lambda);

double wavenumber(double n, double omega);

struct GroupQuantities {
  double N = 0.0;
  double g = 0.0;
};

GroupQuantities group_quantities(const UniaxialMaterial& material, Polarization pol,
                                 double theta, double omega);

/// k and its first four ω-derivatives, by 5-point central differences with
/// one Richardson step. Throws domain if a stencil point leaves the range.
std::array<double, 5> wavenumber_derivatives(const UniaxialMaterial& material,
                                             Polarization pol, double theta, double omega);

/// Relative ω step used for the derivative of the given order (1..4).
double derivative_step(int order);

double walkoff(const UniaxialMaterial& material, Polarization pol, double theta, double lambda);

DispersionSample dispersion_sample(const UniaxialMaterial& material, Polarization pol,
                                   double theta, double omega);
DispersionSample dispersion_sample(const CrystalSpec& crystal, WaveRole role, double omega);

/// k_p - k_s - k_i at the central frequencies for a cut angle θ.
double central_mismatch(const UniaxialMaterial& material, const PolarizationMap& pols,
                        double theta, double lambda_p, double lambda_s, double lambda_i);

struct PhaseMatchSolution {
  double theta = 0.0;
  bool degenerate = false;  // Δk vanishes for every θ
};

/// Cut angle in (0, π/2] with k_p - k_s - k_i = 0, from a 0.5° scan and bisection.
/// Throws infeasible when no root exists and validation on inconsistent wavelengths.
PhaseMatchSolution phase_matching_angle(const UniaxialMaterial& material, double lambda_p,
                                        PmType type, double lambda_s, double lambda_i,
                                        std::optional<PolarizationMap> pols = std::nullopt);

}  // namespace spdc
