#include "spdc/tilt_optics.hpp"

#include <cmath>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

const char* to_string(TiltSource s) {
  switch (s) {
    case TiltSource::none: return "none";
    case TiltSource::explicit_tilt: return "explicit";
    case TiltSource::optimal: return "optimal";
    case TiltSource::grating_pair: return "grating";
  }
  return "?";
}

GratingSpec GratingSpec::from_diffraction(double spacing, int order, double diffraction,
                                          double wavelength) {
  if (!(spacing > 0.0)) fail(ErrorCode::geometry, "groove spacing must be positive");
  const double s = order * wavelength / spacing - std::sin(diffraction);
  if (std::abs(s) > 1.0) {
    std::ostringstream os;
    os << "no incidence angle satisfies the grating equation (sin θ = " << s << ")";
    fail(ErrorCode::geometry, os.str());
  }
  GratingSpec g{spacing, order, std::asin(s), diffraction, wavelength};
  g.validate();
  return g;
}

double GratingSpec::equation_residual() const {
  return std::sin(incidence) + std::sin(diffraction) - order * wavelength / spacing;
}

void GratingSpec::validate() const {
  if (!(spacing > 0.0)) fail(ErrorCode::geometry, "groove spacing must be positive");
  if (!(std::abs(diffraction) < kPi / 2)) fail(ErrorCode::geometry, "|β| must be below 90°");
  if (std::abs(equation_residual()) > 1e-9)
    fail(ErrorCode::geometry, "grating equation sin θ + sin β = mλ/d violated");
}

TiltSetup TiltSetup::with_tilt(double xi_p, TiltSource source) {
  TiltSetup t;
  t.xi_p = xi_p;
  t.source = source;
  return t;
}

double angular_dispersion(const GratingSpec& grating) {
  const double c = std::cos(grating.diffraction);
  if (!(c > 1e-12)) fail(ErrorCode::geometry, "cos β must be positive");
  if (!(grating.spacing > 0.0)) fail(ErrorCode::geometry, "groove spacing must be positive");
  return grating.order / (grating.spacing * c);
}

double tilt_from_dispersion(double epsilon, double lambda0) { return std::atan(-lambda0 * epsilon); }

double magnification(double theta, double beta) { return std::cos(theta) / std::cos(beta); }

std::array<double, 2> matching_residuals(const TiltSetup& t) {
  const double target = -std::tan(t.xi_p) / t.alpha_p;
  const double scale = target != 0.0 ? std::abs(target) : 1.0;
  return {std::abs(std::tan(t.xi_s) - target) / scale, std::abs(t.alpha_p * t.alpha_s - 1.0)};
}

MatchedPair matched_pair(const GratingSpec& gr1, double lambda_s) {
  gr1.validate();
  if (!(lambda_s > 0.0)) fail(ErrorCode::geometry, "downconverted wavelength must be positive");

  MatchedPair out;
  // The mirror image of the pump grating, scaled to λ_s: θ2 = -β1, β2 = -θ1 and
  // m2 λs / d2 = -m1 λp / d1. That choice satisfies both matching conditions exactly.
  const double target = -gr1.order * gr1.wavelength / gr1.spacing;  // m2 λs / d2
  GratingSpec gr2;
  gr2.wavelength = lambda_s;
  gr2.incidence = -gr1.diffraction;
  gr2.diffraction = -gr1.incidence;
  if (std::abs(gr2.diffraction) >= 85.0 * units::deg)
    fail(ErrorCode::infeasible, "matched grating would need |β| >= 85°");

  if (gr1.order == 0) {
    gr2.order = 0;
    gr2.spacing = gr1.spacing;
    out.notes.push_back("zeroth-order pump grating: identity setup");
  } else {
    const int sign = gr1.order > 0 ? -1 : 1;
    bool found = false;
    for (int m = 1; m <= 3 && !found; ++m) {
      for (int density : kGrooveCatalog) {
        const double d = 1e-3 / density;
        if (std::abs(sign * m * lambda_s / d - target) <= 1e-9 * std::abs(target)) {
          gr2.order = sign * m;
          gr2.spacing = d;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      gr2.order = sign;
      gr2.spacing = lambda_s / std::abs(target);
      out.custom_density = true;
      std::ostringstream os;
      os << "no catalog groove density fits; custom density " << 1e-3 / gr2.spacing << " /mm";
      out.notes.push_back(os.str());
    }
  }
  // the grating equation holds by construction; rebuild θ to keep it at machine precision
  gr2.incidence = std::asin(gr2.order * lambda_s / gr2.spacing - std::sin(gr2.diffraction));
  gr2.validate();
  out.notes.push_back("pump-grating incidence angle follows from the grating equation");

  out.grating = gr2;
  out.setup.source = TiltSource::grating_pair;
  out.setup.xi_p = tilt_from_dispersion(angular_dispersion(gr1), gr1.wavelength);
  out.setup.xi_s = tilt_from_dispersion(angular_dispersion(gr2), lambda_s);
  out.setup.alpha_p = magnification(gr1.incidence, gr1.diffraction);
  out.setup.alpha_s = magnification(gr2.incidence, gr2.diffraction);
  const auto res = matching_residuals(out.setup);
  if (res[0] > 1e-6 || res[1] > 1e-6)
    fail(ErrorCode::infeasible, "matched grating pair violates the matching conditions");
  return out;
}

EffectiveDispersion effective_dispersion(const DispersionSample& base, double xi_p,
                                         int walkoff_sign) {
  EffectiveDispersion e;
  e.base = base;
  e.xi_p = xi_p;
  if (xi_p == 0.0) {
    e.N_eff = base.N;
    e.g_eff = base.g;
    return e;
  }
  const double t = std::tan(xi_p);
  e.N_eff = base.N + t * walkoff_sign * std::tan(base.rho) / kSpeedOfLight;
  const double a = t / kSpeedOfLight;
  e.g_eff = base.g - a * a / base.k;
  return e;
}

double optimal_tilt_type2(const DispersionSample& signal, const DispersionSample& idler,
                          int walkoff_sign) {
  const double dtan = walkoff_sign * (std::tan(signal.rho) - std::tan(idler.rho));
  if (dtan == 0.0) {
    if (idler.N == signal.N) return 0.0;  // already matched
    fail(ErrorCode::degenerate, "equal walk-off: no tilt can equalise the group velocities");
  }
  return std::atan(kSpeedOfLight * (idler.N - signal.N) / dtan);
}

double optimal_tilt_type1(const DispersionSample& signal) {
  if (!(signal.g > 0.0))
    fail(ErrorCode::domain, "anomalous or zero GVD: tilt cannot zero g'");
  return std::atan(std::sqrt(kSpeedOfLight * kSpeedOfLight * signal.g * signal.k));
}

namespace {

using Series = std::array<double, 5>;  // power-series coefficients a_m

Series multiply(const Series& a, const Series& b) {
  Series r{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; i + j < 5; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series sqrt_series(const Series& a) {
  Series b{};
  b[0] = std::sqrt(a[0]);
  for (int m = 1; m < 5; ++m) {
    double s = a[m];
    for (int j = 1; j < m; ++j) s -= b[j] * b[m - j];
    b[m] = s / (2.0 * b[0]);
  }
  return b;
}

constexpr double kFactorial[] = {1, 1, 2, 6, 24};

}  // namespace

std::array<double, 5> tilted_wavenumber_derivatives(const std::array<double, 5>& k,
                                                    double tan_xi, double tan_rho) {
  if (tan_xi == 0.0) return k;
  Series ks{};
  for (int m = 0; m < 5; ++m) ks[m] = k[m] / kFactorial[m];
  const double a = tan_xi / kSpeedOfLight;
  Series radicand = multiply(ks, ks);
  radicand[2] -= a * a;
  Series kz = sqrt_series(radicand);
  kz[1] += tan_rho * a;
  std::array<double, 5> d{};
  for (int m = 0; m < 5; ++m) d[m] = kz[m] * kFactorial[m];
  return d;
}

}  // namespace spdc
