#include "spdc/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

const char* to_string(SellmeierForm form) {
  switch (form) {
    case SellmeierForm::sellmeier: return "sellmeier";
    case SellmeierForm::pole_polynomial: return "pole-polynomial";
    case SellmeierForm::constant: return "constant";
  }
  return "?";
}

std::optional<SellmeierForm> parse_sellmeier_form(const std::string& id) {
  if (id == "sellmeier") return SellmeierForm::sellmeier;
  if (id == "pole-polynomial") return SellmeierForm::pole_polynomial;
  if (id == "constant") return SellmeierForm::constant;
  return std::nullopt;
}

const char* to_string(Polarization p) {
  return p == Polarization::ordinary ? "o" : "e";
}
const char* to_string(PmType t) { return t == PmType::type1 ? "I" : "II"; }
const char* to_string(WaveRole r) {
  switch (r) {
    case WaveRole::pump: return "pump";
    case WaveRole::signal: return "signal";
    case WaveRole::idler: return "idler";
  }
  return "?";
}

namespace {

double index_squared(const SellmeierSet& set, double lambda_um) {
  const auto& c = set.coefficients;
  const double l2 = lambda_um * lambda_um;
  switch (set.form) {
    case SellmeierForm::constant:
      return c.at(0) * c.at(0);
    case SellmeierForm::sellmeier: {
      double n2 = c.at(0);
      for (std::size_t i = 1; i + 1 < c.size(); i += 2) n2 += c[i] * l2 / (l2 - c[i + 1]);
      return n2;
    }
    case SellmeierForm::pole_polynomial: {
      double n2 = c.at(0) + c.at(1) / (l2 - c.at(2));
      double power = l2;
      for (std::size_t j = 3; j < c.size(); ++j) {
        n2 += c[j] * power;
        power *= l2;
      }
      return n2;
    }
  }
  return 0.0;
}

}  // namespace

double SellmeierSet::index(double lambda) const {
  if (!validity.contains(lambda)) {
    std::ostringstream os;
    os << material << ": wavelength " << lambda / units::nm << " nm outside validity range ["
       << validity.min / units::nm << ", " << validity.max / units::nm << "] nm";
    fail(ErrorCode::domain, os.str());
  }
  const double n2 = index_squared(*this, lambda / units::um);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    std::ostringstream os;
    os << material << ": non-positive n^2 = " << n2 << " at " << lambda / units::nm << " nm";
    fail(ErrorCode::data, os.str());
  }
  return std::sqrt(n2);
}

WavelengthRange UniaxialMaterial::validity() const {
  return {std::max(ordinary.validity.min, extraordinary.validity.min),
          std::min(ordinary.validity.max, extraordinary.validity.max)};
}

bool UniaxialMaterial::negative() const {
  const auto r = validity();
  const double mid = std::sqrt(r.min * r.max);
  return extraordinary.index(mid) < ordinary.index(mid);
}

void UniaxialMaterial::validate() const {
  const auto r = validity();
  if (!(r.min > 0.0) || !(r.max > r.min))
    fail(ErrorCode::data, name + ": empty or invalid validity range");
  constexpr int kSamples = 512;
  for (int i = 0; i <= kSamples; ++i) {
    const double lambda = r.min * std::pow(r.max / r.min, double(i) / kSamples);
    for (const SellmeierSet* set : {&ordinary, &extraordinary}) {
      const double n = set->index(std::clamp(lambda, r.min, r.max));
      if (!(n > 1.0 && n < 4.0)) {
        std::ostringstream os;
        os << name << ": index " << n << " outside (1, 4) at " << lambda / units::nm << " nm";
        fail(ErrorCode::data, os.str());
      }
    }
  }
}

Polarization PolarizationMap::operator[](WaveRole role) const {
  switch (role) {
    case WaveRole::pump: return pump;
    case WaveRole::signal: return signal;
    case WaveRole::idler: return idler;
  }
  return pump;
}

PolarizationMap default_polarizations(const UniaxialMaterial& material, PmType type) {
  const auto o = Polarization::ordinary;
  const auto e = Polarization::extraordinary;
  if (material.negative()) {
    return type == PmType::type1 ? PolarizationMap{e, o, o} : PolarizationMap{e, e, o};
  }
  return type == PmType::type1 ? PolarizationMap{o, e, e} : PolarizationMap{o, o, e};
}

void CrystalSpec::validate() const {
  if (!(length > 0.0)) {
    std::ostringstream os;
    os << "crystal length must satisfy L > 0 (got " << length << " m)";
    fail(ErrorCode::validation, os.str());
  }
  if (!(cut_angle >= 0.0 && cut_angle <= kPi / 2))
    fail(ErrorCode::validation, "cut angle must lie in [0, 90] deg");
  const bool same = polarization.signal == polarization.idler;
  if (type == PmType::type1 && !same)
    fail(ErrorCode::validation, "type-I needs signal and idler with the same polarization");
  if (type == PmType::type2 && same)
    fail(ErrorCode::validation, "type-II needs orthogonally polarized signal and idler");
  if (walkoff_sign != 1 && walkoff_sign != -1)
    fail(ErrorCode::validation, "walkoff_sign must be +1 or -1");
}

double refractive_index(const UniaxialMaterial& material, Polarization pol, double theta,
                        double lambda) {
  const double no = material.ordinary.index(lambda);
  if (pol == Polarization::ordinary) return no;
  const double ne = material.extraordinary.index(lambda);
  // exact limits, so θ = 0 and θ = π/2 reproduce the principal indices bit for bit
  if (theta == 0.0) return no;
  if (theta == kPi / 2) return ne;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double wavenumber(double n, double omega) { return omega * n / kSpeedOfLight; }

namespace {

// 5-point central stencils; `order` of the derivative, returns estimate and
// the leading truncation power for Richardson extrapolation.
template <class F>
double stencil(const F& f, double x, double h, int order) {
  const double fm2 = f(x - 2 * h), fm1 = f(x - h), fp1 = f(x + h), fp2 = f(x + 2 * h);
  switch (order) {
    case 1: return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    case 2: return (-fm2 + 16 * fm1 - 30 * f(x) + 16 * fp1 - fp2) / (12 * h * h);
    case 3: return (-fm2 + 2 * fm1 - 2 * fp1 + fp2) / (2 * h * h * h);
    case 4: return (fm2 - 4 * fm1 + 6 * f(x) - 4 * fp1 + fp2) / (h * h * h * h);
  }
  return 0.0;
}

template <class F>
double richardson(const F& f, double x, double h, int order) {
  const int p = order <= 2 ? 4 : 2;
  const double coarse = stencil(f, x, h, order);
  const double fine = stencil(f, x, h / 2, order);
  return fine + (fine - coarse) / (std::pow(2.0, p) - 1.0);
}

}  // namespace

double derivative_step(int order) {
  static constexpr double kSteps[] = {0.0, 1e-5, 1e-2, 5e-3, 1e-2};
  return kSteps[std::clamp(order, 1, 4)];
}

std::array<double, 5> wavenumber_derivatives(const UniaxialMaterial& material,
                                             Polarization pol, double theta, double omega) {
  if (!(omega > 0.0)) fail(ErrorCode::domain, "angular frequency must be positive");
  const auto range = material.validity();
  const double widest = 2.0 * derivative_step(4);
  const double lo = units::omega_to_wavelength(omega * (1 + widest));
  const double hi = units::omega_to_wavelength(omega * (1 - widest));
  if (!range.contains(lo) || !range.contains(hi)) {
    std::ostringstream os;
    os << "derivative stencil [" << lo / units::nm << ", " << hi / units::nm
       << "] nm leaves the validity range of " << material.name;
    fail(ErrorCode::domain, os.str());
  }
  auto k = [&](double w) {
    return wavenumber(refractive_index(material, pol, theta, units::omega_to_wavelength(w)), w);
  };
  std::array<double, 5> d{};
  d[0] = k(omega);
  for (int m = 1; m <= 4; ++m) d[m] = richardson(k, omega, omega * derivative_step(m), m);
  return d;
}

GroupQuantities group_quantities(const UniaxialMaterial& material, Polarization pol,
                                 double theta, double omega) {
  const auto d = wavenumber_derivatives(material, pol, theta, omega);
  return {d[1], d[2]};
}

double walkoff(const UniaxialMaterial& material, Polarization pol, double theta, double lambda) {
  if (pol == Polarization::ordinary) return 0.0;
  const double no = material.ordinary.index(lambda);
  const double ne = material.extraordinary.index(lambda);
  const double nt = refractive_index(material, pol, theta, lambda);
  const double tan_rho =
      0.5 * nt * nt * std::sin(2.0 * theta) * (1.0 / (ne * ne) - 1.0 / (no * no));
  return std::atan(std::abs(tan_rho));
}

DispersionSample dispersion_sample(const UniaxialMaterial& material, Polarization pol,
                                   double theta, double omega) {
  const auto d = wavenumber_derivatives(material, pol, theta, omega);
  DispersionSample s;
  s.omega = omega;
  s.n = refractive_index(material, pol, theta, units::omega_to_wavelength(omega));
  s.k = d[0];
  s.N = d[1];
  s.g = d[2];
  s.rho = walkoff(material, pol, theta, units::omega_to_wavelength(omega));
  return s;
}

DispersionSample dispersion_sample(const CrystalSpec& crystal, WaveRole role, double omega) {
  return dispersion_sample(crystal.material, crystal.polarization[role], crystal.cut_angle, omega);
}

double central_mismatch(const UniaxialMaterial& material, const PolarizationMap& pols,
                        double theta, double lambda_p, double lambda_s, double lambda_i) {
  auto k = [&](Polarization p, double lambda) {
    return wavenumber(refractive_index(material, p, theta, lambda),
                      units::wavelength_to_omega(lambda));
  };
  return k(pols.pump, lambda_p) - k(pols.signal, lambda_s) - k(pols.idler, lambda_i);
}

PhaseMatchSolution phase_matching_angle(const UniaxialMaterial& material, double lambda_p,
                                        PmType type, double lambda_s, double lambda_i,
                                        std::optional<PolarizationMap> pols) {
  const double mismatch = 1.0 / lambda_p - 1.0 / lambda_s - 1.0 / lambda_i;
  if (std::abs(mismatch) * lambda_p > 1e-9)
    fail(ErrorCode::validation, "wavelengths violate energy conservation 1/λp = 1/λs + 1/λi");
  const PolarizationMap map = pols.value_or(default_polarizations(material, type));
  auto dk = [&](double theta) {
    return central_mismatch(material, map, theta, lambda_p, lambda_s, lambda_i);
  };

  constexpr double kTolerance = 1e-3;  // rad/m
  constexpr int kSteps = 180;          // 0.5 deg
  const double step = (kPi / 2) / kSteps;

  bool all_zero = true;
  double prev_theta = 0.0;
  double prev = dk(0.0);
  if (std::abs(prev) >= kTolerance) all_zero = false;
  std::optional<std::pair<double, double>> bracket;
  for (int i = 1; i <= kSteps; ++i) {
    const double theta = i == kSteps ? kPi / 2 : i * step;
    const double value = dk(theta);
    if (std::abs(value) >= kTolerance) all_zero = false;
    if (!bracket && ((prev < 0) != (value < 0) || value == 0.0) && std::abs(prev) >= kTolerance)
      bracket = {prev_theta, theta};
    prev_theta = theta;
    prev = value;
  }
  if (all_zero) return {0.0, true};
  if (!bracket) {
    if (std::abs(dk(0.0)) < kTolerance) return {0.0, false};
    std::ostringstream os;
    os << "no type-" << to_string(type) << " phase-matching angle for " << material.name
       << " at λp = " << lambda_p / units::nm << " nm";
    fail(ErrorCode::infeasible, os.str());
  }
  auto [a, b] = *bracket;
  double fa = dk(a);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = dk(mid);
    if (std::abs(fm) < kTolerance && (b - a) < 1e-12) return {mid, false};
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
    if (b - a < 1e-15) break;
  }
  return {0.5 * (a + b), false};
}

}  // namespace spdc
