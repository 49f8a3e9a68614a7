#include "spdc/profile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spdc {

namespace {

double crossing(double x0, double y0, double x1, double y1, double level) {
  if (y1 == y0) return 0.5 * (x0 + x1);
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

std::optional<HalfMaxInterval> main_lobe_half_max(std::span<const double> x,
                                                  std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) return std::nullopt;
  const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double half = 0.5 * y[peak];
  if (!(half > 0.0)) return std::nullopt;
  std::size_t l = peak;
  while (l > 0 && y[l - 1] >= half) --l;
  std::size_t r = peak;
  while (r + 1 < y.size() && y[r + 1] >= half) ++r;
  if (l == 0 || r + 1 == y.size()) return std::nullopt;
  HalfMaxInterval out;
  out.peak = peak;
  out.left = crossing(x[l - 1], y[l - 1], x[l], y[l], half);
  out.right = crossing(x[r], y[r], x[r + 1], y[r + 1], half);
  return out;
}

WidestHalfMax widest_half_max(std::span<const double> x, std::span<const double> y) {
  WidestHalfMax out;
  if (x.size() != y.size() || x.empty()) return out;
  const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double half = 0.5 * y[peak];
  std::size_t i = 0;
  double best = -1.0;
  while (i < y.size()) {
    if (y[i] < half) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < y.size() && y[j + 1] >= half) ++j;
    ++out.regions;
    const double left = i > 0 ? crossing(x[i - 1], y[i - 1], x[i], y[i], half) : x[i];
    const double right = j + 1 < y.size() ? crossing(x[j], y[j], x[j + 1], y[j + 1], half) : x[j];
    if (right - left > best) {
      best = right - left;
      out.interval.left = left;
      out.interval.right = right;
      out.interval.peak = static_cast<std::size_t>(
          std::max_element(y.begin() + i, y.begin() + j + 1) - y.begin());
    }
    i = j + 1;
  }
  return out;
}

Moments weighted_moments(std::span<const double> x, std::span<const double> w) {
  Moments m;
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s0 += w[i];
    s1 += w[i] * x[i];
  }
  if (!(s0 > 0.0)) return m;
  m.mean = s1 / s0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - m.mean;
    s2 += w[i] * d * d;
  }
  m.rms = std::sqrt(s2 / s0);
  m.norm = x.size() > 1 ? s0 * (x[1] - x[0]) : s0;
  return m;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  return f;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  PowerLawFit out;
  if (x.size() != y.size() || x.size() < 2) return out;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return out;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const auto [lo, hi] = std::minmax_element(lx.begin(), lx.end());
  if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) return out;
  const auto f = fit_line(lx, ly);
  out.exponent = f.slope;
  out.prefactor = std::exp(f.intercept);
  out.defined = true;
  return out;
}

}  // namespace spdc
