#include "spdc/biphoton.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "spdc/error.hpp"
#include "spdc/profile.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Forward DFT of `in` (length m), FFTW planner calls serialised.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in) {
  const int m = static_cast<int>(in.size());
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (int k = 0; k < m; ++k) {
    buf[k][0] = in[k].real();
    buf[k][1] = in[k].imag();
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> out(m);
  for (int k = 0; k < m; ++k) out[k] = {buf[k][0], buf[k][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

struct Transform {
  std::vector<double> tau;
  std::vector<std::complex<double>> psi;
};

// Ψ on τ_k = k dτ, k = -M/2 .. M/2-1, for Φ(Ω_n) exp(-iΩ_n shift).
Transform transform(const FrequencyGrid& g, const std::vector<std::complex<double>>& phi,
                    int padding, double shift) {
  const int n = g.points;
  const int m = n * padding;
  const double h = g.spacing();
  std::vector<std::complex<double>> buf(m);
  for (int i = 0; i < n; ++i) buf[i] = phi[i] * std::polar(1.0, -g.node(i) * shift);
  const auto f = dft(buf);
  Transform t;
  t.tau.resize(m);
  t.psi.resize(m);
  const double dtau = kTwoPi / (m * h);
  const double scale = h / std::sqrt(kTwoPi);
  for (int k = 0; k < m; ++k) {
    const int kk = k - m / 2;
    const auto& v = f[(kk + m) % m];
    // Ω_n = (n - (N-1)/2) h contributes exp(iπ(N-1)kk/M)
    const double carrier = kPi * (n - 1) * static_cast<double>(kk) / m;
    t.tau[k] = kk * dtau;
    t.psi[k] = scale * v * std::polar(1.0, carrier);
  }
  return t;
}

double circular_centroid(const Transform& t) {
  const int m = static_cast<int>(t.tau.size());
  std::complex<double> acc = 0.0;
  for (int k = 0; k < m; ++k) acc += std::norm(t.psi[k]) * std::polar(1.0, kTwoPi * k / m);
  const double period = -2.0 * t.tau.front();
  double phase = std::arg(acc) / kTwoPi;  // fraction of the period
  return t.tau.front() + phase * period + (phase < 0 ? period : 0.0);
}

double linear_centroid(const Transform& t) {
  std::vector<double> w(t.psi.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::norm(t.psi[k]);
  return weighted_moments(t.tau, w).mean;
}

}  // namespace

double edge_window(double omega, double half_span, double fraction) {
  if (fraction <= 0.0) return 1.0;
  const double u = std::abs(omega) / half_span;
  const double start = 1.0 - fraction;
  if (u <= start) return 1.0;
  if (u >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (u - start) / fraction));
}

BiphotonWaveform temporal_biphoton(const JointSpectrum& js, TransformOptions options) {
  if (!js.cw)
    fail(ErrorCode::unsupported, "temporal biphoton needs a cw joint spectrum (1D slice)");
  if (options.padding < 4) fail(ErrorCode::validation, "zero-padding factor must be >= 4");
  if (options.edge_taper < 0.0 || options.edge_taper >= 1.0)
    fail(ErrorCode::validation, "edge taper fraction must lie in [0, 1)");
  const auto& g = js.grid;
  const auto x = g.nodes();
  std::vector<double> dens(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dens[i] = std::norm(js.amplitude[i]);
  if (!main_lobe_half_max(x, dens))
    fail(ErrorCode::truncated, "spectral main lobe reaches the grid edge");
  std::vector<std::complex<double>> phi(js.amplitude);
  for (std::size_t i = 0; i < x.size(); ++i) {
    phi[i] *= edge_window(x[i], g.half_span, options.edge_taper);
    dens[i] = std::norm(phi[i]);
  }

  double shift = 0.0;
  auto t = transform(g, phi, options.padding, shift);
  // a first circular estimate copes with group delays that wrap the window
  shift = circular_centroid(t);
  for (int it = 0; it < options.recentre_iterations; ++it) {
    t = transform(g, phi, options.padding, shift);
    shift += linear_centroid(t);
  }
  t = transform(g, phi, options.padding, shift);

  BiphotonWaveform w;
  w.group_delay = shift;
  w.tau = std::move(t.tau);
  w.psi = std::move(t.psi);
  const double dtau = w.tau[1] - w.tau[0];
  double spectral = 0.0;
  for (double d : dens) spectral += d;
  w.spectral_norm = spectral * g.spacing();
  w.intensity.resize(w.psi.size());
  double temporal = 0.0;
  for (std::size_t k = 0; k < w.psi.size(); ++k) {
    w.intensity[k] = std::norm(w.psi[k]);
    temporal += w.intensity[k];
  }
  w.temporal_norm = temporal * dtau;
  for (auto& v : w.intensity) v /= w.temporal_norm;

  const auto metrics = correlation_metrics(w);
  w.rms = metrics.rms;
  w.fwhm = metrics.fwhm;
  w.multi_lobe = metrics.multi_lobe;
  std::vector<double> amp(w.psi.size());
  for (std::size_t k = 0; k < amp.size(); ++k) amp[k] = std::abs(w.psi[k]);
  w.amplitude_rms = weighted_moments(w.tau, amp).rms;
  return w;
}

CorrelationMetrics correlation_metrics(const BiphotonWaveform& w) {
  CorrelationMetrics m;
  m.rms = weighted_moments(w.tau, w.intensity).rms;
  const auto half = widest_half_max(w.tau, w.intensity);
  m.fwhm = half.interval.width();
  m.multi_lobe = half.regions > 1;
  return m;
}

JointSpectrum with_linear_phase(const JointSpectrum& js, double a, double b) {
  JointSpectrum out = js;
  const auto& g = js.grid;
  if (js.cw) {
    for (int i = 0; i < g.points; ++i) out.amplitude[i] *= std::polar(1.0, a + b * g.node(i));
  } else {
    for (int i = 0; i < g.points; ++i)
      for (int j = 0; j < g.points; ++j)
        out.amplitude[static_cast<std::size_t>(i) * g.points + j] *=
            std::polar(1.0, a + b * g.node(i));
  }
  return out;
}

double transform_limit_ratio(const JointSpectrum& js, TransformOptions options) {
  const auto actual = temporal_biphoton(js, options);
  const auto& g = js.grid;
  const auto x = g.nodes();
  std::vector<double> dens(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dens[i] = std::norm(js.amplitude[i]);
  const auto lobe = main_lobe_half_max(x, dens);

  // unwrapped phase over the FWHM support, starting from the peak
  std::vector<double> xs, ps;
  const auto p = static_cast<int>(lobe->peak);
  std::vector<double> phase(x.size());
  phase[p] = std::arg(js.amplitude[p]);
  for (int i = p + 1; i < g.points; ++i) {
    double d = std::arg(js.amplitude[i]) - std::arg(js.amplitude[i - 1]);
    d -= kTwoPi * std::round(d / kTwoPi);
    phase[i] = phase[i - 1] + d;
  }
  for (int i = p - 1; i >= 0; --i) {
    double d = std::arg(js.amplitude[i]) - std::arg(js.amplitude[i + 1]);
    d -= kTwoPi * std::round(d / kTwoPi);
    phase[i] = phase[i + 1] + d;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= lobe->left && x[i] <= lobe->right) {
      xs.push_back(x[i]);
      ps.push_back(phase[i]);
    }
  }
  const auto fit = fit_line(xs, ps);
  JointSpectrum limited = js;
  for (int i = 0; i < g.points; ++i)
    limited.amplitude[i] =
        std::polar(std::abs(js.amplitude[i]), fit.intercept + fit.slope * x[i]);
  const auto ideal = temporal_biphoton(limited, options);
  return actual.rms / ideal.rms;
}

}  // namespace spdc
