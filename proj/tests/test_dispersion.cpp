#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spdc/dispersion.hpp"
#include "spdc/error.hpp"
#include "spdc/material_io.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {

const UniaxialMaterial& bbo() {
  static const UniaxialMaterial m = find_material("bbo");
  return m;
}

// n^2 = A + B λ²/(λ² - C), λ in µm.
constexpr double kA = 1.0, kB = 1.2, kC = 0.012;

UniaxialMaterial one_term() {
  return parse_material(
      "name = oneterm\nform = sellmeier\n"
      "ordinary = 1.0, 1.2, 0.012\nextraordinary = 1.0, 1.1, 0.011\nrange = 0.3, 3.0\n");
}

// Analytic N and g of the ordinary one-term form.
struct Analytic {
  double n, N, g;
};

Analytic analytic(double lambda) {
  const double l = lambda / units::um;
  const double d = l * l - kC;
  const double n = std::sqrt(kA + kB * l * l / d);
  const double f1 = -2.0 * kB * kC * l / (d * d);
  const double f2 = 2.0 * kB * kC * (3.0 * l * l + kC) / (d * d * d);
  const double n1 = f1 / (2.0 * n);
  const double n2 = (f2 / 2.0 - n1 * n1) / n;
  const double omega = units::wavelength_to_omega(lambda);
  return {n, (n - l * n1) / kSpeedOfLight, l * l * n2 / (omega * kSpeedOfLight)};
}

// Δk at the central frequencies, brute-force scanned.
double brute_cut(PmType type, double step_deg) {
  const auto pols = default_polarizations(bbo(), type);
  double best = 0.0, best_abs = 1e300;
  for (double t = step_deg; t < 90.0; t += step_deg) {
    const double dk = std::abs(central_mismatch(bbo(), pols, t * units::deg, 405e-9, 810e-9, 810e-9));
    if (dk < best_abs) {
      best_abs = dk;
      best = t;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("ordinary index of BBO at 810 nm") {
  const double n = refractive_index(bbo(), Polarization::ordinary, 0.0, 810e-9);
  CHECK(n == doctest::Approx(1.66).epsilon(0.01 / 1.66));
}

TEST_CASE("index ellipsoid limits") {
  for (double l : {450e-9, 810e-9, 1550e-9}) {
    const double no = refractive_index(bbo(), Polarization::ordinary, 0.0, l);
    const double ne = bbo().extraordinary.index(l);
    CHECK(refractive_index(bbo(), Polarization::extraordinary, 0.0, l) == no);
    CHECK(refractive_index(bbo(), Polarization::extraordinary, kPi / 2, l) == doctest::Approx(ne).epsilon(1e-15));
  }
}

TEST_CASE("out of range wavelength is a domain error") {
  try {
    refractive_index(bbo(), Polarization::ordinary, 0.0, 10e-6);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("negative radicand is a data error") {
  try {
    parse_material(
        "name = bad\nform = sellmeier\nordinary = -5.0, 1.0, 0.01\nextraordinary = -5.0, 1.0, 0.01\n"
        "range = 0.3, 3.0\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::data);
  }
}

TEST_CASE("index is continuous in angle and wavelength") {
  // first differences are set by the slope; a jump shows up in the second difference
  auto kink = [](auto f, int count) {
    double worst = 0.0, a = f(0), b = f(1);
    for (int i = 2; i <= count; ++i) {
      const double c = f(i);
      worst = std::max(worst, std::abs(c - 2.0 * b + a));
      a = b;
      b = c;
    }
    return worst;
  };
  const double angle = kink(
      [](int i) { return refractive_index(bbo(), Polarization::extraordinary, i * 1e-4, 810e-9); }, 15707);
  const double wavelength = kink(
      [](int i) { return refractive_index(bbo(), Polarization::ordinary, 0.0, (0.4 + i * 1e-4) * 1e-6); },
      20000);
  CHECK(angle < 1e-6);
  CHECK(wavelength < 1e-6);
}

TEST_CASE("wavenumber identities") {
  CHECK(wavenumber(1.0, units::wavelength_to_omega(1.0)) == doctest::Approx(kTwoPi).epsilon(1e-15));
  const double w = units::wavelength_to_omega(810e-9);
  CHECK(wavenumber(3.2, w) == doctest::Approx(2.0 * wavenumber(1.6, w)).epsilon(1e-15));
  const double n = refractive_index(bbo(), Polarization::ordinary, 0.0, 810e-9);
  CHECK(wavenumber(n, w) == doctest::Approx(1.29e7).epsilon(0.01));
}

TEST_CASE("dispersionless medium") {
  const auto m = parse_material(
      "name = flat\nform = constant\nordinary = 1.5\nextraordinary = 1.5\nrange = 0.2, 5\n");
  const auto q = group_quantities(m, Polarization::ordinary, 0.0, units::wavelength_to_omega(810e-9));
  CHECK(q.N == doctest::Approx(1.5 / kSpeedOfLight).epsilon(1e-12));
  CHECK(std::abs(q.g) < 1e-33);
}

TEST_CASE("finite differences match the analytic one-term form") {
  const auto m = one_term();
  for (double l : {500e-9, 810e-9, 1300e-9, 2000e-9}) {
    const auto a = analytic(l);
    const auto q = group_quantities(m, Polarization::ordinary, 0.0, units::wavelength_to_omega(l));
    CAPTURE(l);
    CHECK(std::abs(q.N / a.N - 1.0) < 1e-8);
    CHECK(std::abs(q.g / a.g - 1.0) < 1e-8);
  }
}

TEST_CASE("BBO ordinary GVD sets the type-I tilt scale") {
  const auto s = dispersion_sample(bbo(), Polarization::ordinary, 0.0, units::wavelength_to_omega(810e-9));
  CHECK(s.g == doctest::Approx(7e-26).epsilon(0.2));
  const double xi = std::atan(std::sqrt(kSpeedOfLight * kSpeedOfLight * s.g * s.k));
  CHECK(xi / units::deg == doctest::Approx(16.2).epsilon(1.0 / 16.2));
}

TEST_CASE("derivative stencil leaving the range is a domain error") {
  const auto m = one_term();
  try {
    wavenumber_derivatives(m, Polarization::ordinary, 0.0, units::wavelength_to_omega(0.3e-6));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("walk-off") {
  const double l = 810e-9;
  for (double t : {0.1, 0.5, 1.0})
    CHECK(walkoff(bbo(), Polarization::ordinary, t, l) == 0.0);
  CHECK(std::abs(walkoff(bbo(), Polarization::extraordinary, 0.0, l)) < 1e-15);
  CHECK(std::abs(walkoff(bbo(), Polarization::extraordinary, kPi / 2, l)) < 1e-15);
  for (double t : {0.2, 0.7, 1.1})
    CHECK(std::abs(walkoff(bbo(), Polarization::extraordinary, t, l)) ==
          doctest::Approx(std::abs(walkoff(bbo(), Polarization::extraordinary, kPi - t, l))).epsilon(1e-12));
  const double theta = phase_matching_angle(bbo(), 405e-9, PmType::type2, 810e-9, 810e-9).theta;
  const double rho = walkoff(bbo(), Polarization::extraordinary, theta, l);
  CHECK(rho / units::deg == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("cut angles against a 0.01 degree scan") {
  const auto t1 = phase_matching_angle(bbo(), 405e-9, PmType::type1, 810e-9, 810e-9);
  const auto t2 = phase_matching_angle(bbo(), 405e-9, PmType::type2, 810e-9, 810e-9);
  CHECK_FALSE(t1.degenerate);
  CHECK(std::abs(t1.theta / units::deg - brute_cut(PmType::type1, 0.01)) <= 0.01);
  CHECK(std::abs(t2.theta / units::deg - brute_cut(PmType::type2, 0.01)) <= 0.01);
  CHECK(t1.theta / units::deg == doctest::Approx(29.0).epsilon(1.0 / 29.0));
  CHECK(t2.theta / units::deg == doctest::Approx(41.8).epsilon(1.0 / 41.8));

  for (const auto& [type, sol] : {std::pair{PmType::type1, t1}, std::pair{PmType::type2, t2}}) {
    const double dk = central_mismatch(bbo(), default_polarizations(bbo(), type), sol.theta, 405e-9,
                                       810e-9, 810e-9);
    CHECK(std::abs(dk) * 2e-3 < 1e-3);
  }
}

TEST_CASE("index-matched fiction is degenerate") {
  const auto m = parse_material(
      "name = flat\nform = constant\nordinary = 1.5\nextraordinary = 1.5\nrange = 0.2, 5\n");
  CHECK(phase_matching_angle(m, 405e-9, PmType::type1, 810e-9, 810e-9, PolarizationMap{}).degenerate);
}

TEST_CASE("no phase matching is infeasible") {
  try {
    const auto weak = parse_material(
        "name = weak\nform = sellmeier\nordinary = 1.0, 1.2, 0.012\nextraordinary = 1.0, 1.19, 0.012\n"
        "range = 0.3, 3.0\n");
    phase_matching_angle(weak, 405e-9, PmType::type1, 810e-9, 810e-9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible);
  }
}

TEST_CASE("energy conservation is checked") {
  CHECK_THROWS_AS(phase_matching_angle(bbo(), 405e-9, PmType::type1, 800e-9, 800e-9), Error);
}

TEST_CASE("crystal invariants") {
  CrystalSpec c;
  c.material = bbo();
  c.length = -1e-3;
  c.polarization = default_polarizations(bbo(), PmType::type1);
  CHECK_THROWS_AS(c.validate(), Error);
  c.length = 1e-3;
  c.cut_angle = 0.5;
  CHECK_NOTHROW(c.validate());
  c.type = PmType::type2;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("shipped sets stay within (1, 4)") {
  CHECK_NOTHROW(bbo().validate());
  CHECK_NOTHROW(find_material("bbo_eimerl1987").validate());
}
