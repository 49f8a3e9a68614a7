#include "spdc/entanglement.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

void DoubleGaussianModel::validate() const {
  if (!(pump_bandwidth > 0.0) || !(biphoton_bandwidth > 0.0))
    fail(ErrorCode::validation, "double-Gaussian bandwidths must be positive");
}

namespace {

SchmidtSpectrum from_weights(std::vector<double> lambda) {
  SchmidtSpectrum s;
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  double p2 = 0.0, entropy = 0.0;
  for (double& l : lambda) {
    l /= sum;
    if (l < kSchmidtCutoff) break;
    s.coefficients.push_back(l);
    p2 += l * l;
    entropy -= l * std::log2(l);
  }
  s.total = std::accumulate(s.coefficients.begin(), s.coefficients.end(), 0.0);
  s.modes = static_cast<long long>(s.coefficients.size());
  s.K = 1.0 / p2;
  s.E = std::max(entropy, 0.0);
  if (s.modes == static_cast<long long>(lambda.size()) && lambda.size() > 1) {
    s.truncated = true;
    s.flags.push_back("Schmidt spectrum not resolved to the cutoff; refine or widen the grid");
  }
  return s;
}

}  // namespace

SchmidtSpectrum schmidt_decompose(const JointSpectrum& js) {
  if (js.cw) fail(ErrorCode::unsupported, "Schmidt decomposition needs a 2D joint spectrum");
  const int n = js.grid.points;
  const double h = js.grid.spacing();
  const bool real = std::all_of(js.amplitude.begin(), js.amplitude.end(),
                                [](const auto& z) { return z.imag() == 0.0; });
  Eigen::VectorXd sv;
  if (real) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = js.at(i, j).real() * h;
    sv = Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues();
  } else {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = js.at(i, j) * h;
    sv = Eigen::BDCSVD<Eigen::MatrixXcd>(a).singularValues();
  }
  std::vector<double> lambda(n);
  for (int k = 0; k < n; ++k) lambda[k] = sv[k] * sv[k];
  if (!(std::accumulate(lambda.begin(), lambda.end(), 0.0) > 0.0))
    fail(ErrorCode::degenerate, "joint spectrum is identically zero");
  return from_weights(std::move(lambda));
}

SchmidtSpectrum gaussian_entropy(const DoubleGaussianModel& model, int keep) {
  model.validate();
  double r = model.ratio();
  if (r < 1.0) r = 1.0 / r;  // the spectrum is symmetric under B_c <-> B_p
  SchmidtSpectrum s;
  s.K = (r * r + 1.0) / (2.0 * r);
  if (r == 1.0) {
    s.coefficients = {1.0};
    s.modes = 1;
    return s;
  }
  // μ² = ((r-1)/(r+1))², written to stay accurate for r up to 1e9 and beyond
  const double one_minus_q = 4.0 * r / ((r + 1.0) * (r + 1.0));
  const double q_over = (r - 1.0) * (r - 1.0) / (4.0 * r);
  const double log2_q = 2.0 * std::log1p(-2.0 / (r + 1.0)) / std::log(2.0);
  s.E = -std::log2(one_minus_q) - q_over * log2_q;

  // λ_n >= cutoff while n < n_max
  const double log2_lead = std::log2(one_minus_q);
  const double n_max = (std::log2(kSchmidtCutoff) - log2_lead) / log2_q;
  s.modes = n_max >= 0.0 ? static_cast<long long>(std::floor(n_max)) + 1 : 0;
  const long long count = std::min<long long>(s.modes, keep);
  for (long long k = 0; k < count; ++k)
    s.coefficients.push_back(std::exp2(log2_lead + static_cast<double>(k) * log2_q));
  s.total = -std::expm1(std::log1p(-2.0 / (r + 1.0)) * 2.0 * static_cast<double>(s.modes));
  return s;
}

JointSpectrum double_gaussian_spectrum(const DoubleGaussianModel& model, int points) {
  model.validate();
  const double bp = model.pump_bandwidth, bc = model.biphoton_bandwidth;
  FrequencyGrid g;
  g.omega_s0 = g.omega_i0 = 1.0;  // detunings only
  g.points = points;
  // span resolves the wider factor; spacing never coarser than the narrower / 1.5
  g.half_span = std::min(2.2 * std::max(bc, bp), points * std::min(bc, bp) / 3.0);
  return tabulate(g, false, [&](double ws, double wi) {
    const double p = (ws + wi) / bp, c = (ws - wi) / bc;
    return std::complex<double>(std::exp(-p * p - c * c), 0.0);
  }, "double-gaussian");
}

ModelConversion bandwidth_to_model(double dlambda_s, double lambda_s0, const PumpSpec& pump) {
  if (!(dlambda_s > 0.0)) fail(ErrorCode::degenerate, "zero signal bandwidth");
  if (!(lambda_s0 > 0.0)) fail(ErrorCode::validation, "center wavelength must be positive");
  ModelConversion out;
  out.model.biphoton_bandwidth = 2.0 * units::dlambda_to_domega(dlambda_s, lambda_s0);
  if (pump.envelope == PumpEnvelope::gaussian) {
    out.model.pump_bandwidth = pump.bandwidth;
  } else {
    out.model.pump_bandwidth = kDefaultCwBandwidth;
    out.warnings.push_back("cw pump: B_p taken as 2π·5 MHz");
  }
  return out;
}

ModelConversion bandwidth_to_model(const BandwidthReport& report, const PumpSpec& pump) {
  auto out = bandwidth_to_model(report.singles_fwhm, report.lambda_s0, pump);
  if (report.singles_regions > 1)
    out.warnings.push_back("multi-lobed singles spectrum: Gaussian-equivalent fit is poor");
  return out;
}

}  // namespace spdc
