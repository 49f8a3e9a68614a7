#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spdc/entanglement.hpp"
#include "spdc/error.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {

const double kBp = 1e13;

DoubleGaussianModel model(double ratio) { return {kBp, ratio * kBp}; }

void check_invariants(const SchmidtSpectrum& s) {
  CHECK(s.total == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.K >= 1.0 - 1e-12);
  CHECK(s.E >= -1e-12);
  CHECK(s.K <= std::exp2(s.E) * (1.0 + 1e-3));
  if (s.modes > 0) CHECK(s.E <= std::log2(double(s.modes)) + 1e-9);
  for (std::size_t n = 1; n < s.coefficients.size(); ++n)
    CHECK(s.coefficients[n] <= s.coefficients[n - 1]);
}

}  // namespace

TEST_CASE("separable spectrum") {
  const FrequencyGrid g{2e15, 2e15, 5e13, 256};
  const auto js = tabulate(g, false, [](double a, double b) {
    return std::exp(-a * a / 2e26) * std::exp(-(b - 3e12) * (b - 3e12) / 5e26) * std::polar(1.0, 1e-14 * b);
  });
  const auto s = schmidt_decompose(js);
  CHECK(s.K == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(s.E) < 1e-6);
  CHECK_FALSE(s.truncated);
  check_invariants(s);
}

TEST_CASE("equal bandwidths are separable") {
  const auto js = double_gaussian_spectrum(model(1.0), 256);
  const auto s = schmidt_decompose(js);
  CHECK(s.K == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(s.E) < 1e-6);
  const auto g = gaussian_entropy(model(1.0));
  CHECK(g.K == 1.0);
  CHECK(g.E == 0.0);
}

TEST_CASE("SVD agrees with the closed form") {
  for (double r : {2.0, 5.0, 10.0, 30.0, 100.0}) {
    const int n = r > 50 ? 512 : 256;
    const auto s = schmidt_decompose(double_gaussian_spectrum(model(r), n));
    const auto g = gaussian_entropy(model(r));
    CAPTURE(r);
    CHECK(s.E == doctest::Approx(g.E).epsilon(0.01));
    CHECK(s.K == doctest::Approx(g.K).epsilon(0.01));
    check_invariants(s);
    check_invariants(g);
  }
}

TEST_CASE("grid refinement leaves E and K unchanged") {
  for (double r : {3.0, 10.0}) {
    const auto a = schmidt_decompose(double_gaussian_spectrum(model(r), 128));
    const auto b = schmidt_decompose(double_gaussian_spectrum(model(r), 256));
    CHECK(std::abs(a.E - b.E) < 1e-4);
    CHECK(std::abs(a.K - b.K) < 1e-4 * b.K);
  }
}

TEST_CASE("coarse grid is flagged, not fatal") {
  const auto s = schmidt_decompose(double_gaussian_spectrum(model(100.0), 16));
  CHECK(s.truncated);
  CHECK_FALSE(s.flags.empty());
}

TEST_CASE("closed form: symmetry, monotonicity, anchors") {
  CHECK(gaussian_entropy(model(7.0)).E == doctest::Approx(gaussian_entropy(model(1.0 / 7.0)).E).epsilon(1e-12));
  double prev = -1.0;
  for (double r = 1.0; r < 1e9; r *= 1.7) {
    const double e = gaussian_entropy(model(r)).E;
    CHECK(e > prev);
    prev = e;
  }
  CHECK(gaussian_entropy(model(3.3e6)).E == doctest::Approx(21.0).epsilon(1.0 / 21.0));
  // K of a double Gaussian is (r + 1/r) / 2
  CHECK(gaussian_entropy(model(40.0)).K == doctest::Approx(0.5 * (40.0 + 1.0 / 40.0)).epsilon(1e-12));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(gaussian_entropy({0.0, 1e13}), Error);
  CHECK_THROWS_AS(gaussian_entropy({1e13, -1.0}), Error);
}

TEST_CASE("bandwidth to model") {
  const PumpSpec cw{532e-9, PumpEnvelope::cw, 0.0};
  const auto a = bandwidth_to_model(31e-9, 1064e-9, cw);
  CHECK(a.model.biphoton_bandwidth / units::THz == doctest::Approx(16.4).epsilon(0.02));
  CHECK(a.model.pump_bandwidth == kDefaultCwBandwidth);
  CHECK_FALSE(a.warnings.empty());
  const auto b = bandwidth_to_model(500e-9, 810e-9, {405e-9, PumpEnvelope::cw, 0.0});
  CHECK(b.model.biphoton_bandwidth > 2.0 * kPi * 420e12);
  const PumpSpec p{405e-9, PumpEnvelope::gaussian, 1e12};
  CHECK(bandwidth_to_model(5e-9, 810e-9, p).model.pump_bandwidth == 1e12);
  try {
    bandwidth_to_model(0.0, 810e-9, p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
  }
}
