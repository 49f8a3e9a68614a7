#pragma once

// Width and fit helpers shared by the bandwidth, biphoton and sweep code.

#include <cstddef>
#include <optional>
#include <span>

namespace spdc {

struct HalfMaxInterval {
  double left = 0.0;   // interpolated abscissa of the left half-maximum crossing
  double right = 0.0;  // interpolated abscissa of the right crossing
  std::size_t peak = 0;
  double width() const { return right - left; }
};

/// Half-maximum crossings of the lobe containing the global maximum, found
/// by linear interpolation. nullopt when the lobe reaches either end of the
/// samples (truncated). `x` must be increasing.
std::optional<HalfMaxInterval> main_lobe_half_max(std::span<const double> x,
                                                  std::span<const double> y);

struct WidestHalfMax {
  HalfMaxInterval interval;
  int regions = 0;  // number of disjoint runs above half maximum
};

/// Widest contiguous run above half maximum, with linear interpolation at
/// its ends (clamped to the sample range).
WidestHalfMax widest_half_max(std::span<const double> x, std::span<const double> y);

struct Moments {
  double mean = 0.0;
  double rms = 0.0;
  double norm = 0.0;  // sum of weights times the spacing
};

/// Mean and standard deviation of x weighted by w on a uniform grid.
Moments weighted_moments(std::span<const double> x, std::span<const double> w);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  bool defined = false;  // false when x has no spread or any value is non-positive
};

/// Least squares of log y = log A + p log x.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace spdc
