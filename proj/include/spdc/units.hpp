#pragma once

// Physical constants and unit conversions. Everything inside the engine is
// strict SI (m, s, rad, rad/s); conversions to display units live here only.

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace spdc {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace units {

inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double mm = 1e-3;
inline constexpr double fs = 1e-15;
inline constexpr double deg = kPi / 180.0;

// Cyclic frequency (Hz) to angular frequency (rad/s).
inline constexpr double angular(double hertz) { return kTwoPi * hertz; }
inline constexpr double THz = kTwoPi * 1e12;  // rad/s per THz
inline constexpr double MHz = kTwoPi * 1e6;

inline double wavelength_to_omega(double lambda) { return kTwoPi * kSpeedOfLight / lambda; }
inline double omega_to_wavelength(double omega) { return kTwoPi * kSpeedOfLight / omega; }

// Linearised bandwidth conversion about a center wavelength.
inline double dlambda_to_domega(double dlambda, double lambda0) {
  return kTwoPi * kSpeedOfLight * dlambda / (lambda0 * lambda0);
}
inline double domega_to_dlambda(double domega, double lambda0) {
  return domega * lambda0 * lambda0 / (kTwoPi * kSpeedOfLight);
}

enum class Dimension { length, angle, frequency, time, dimensionless };

struct Quantity {
  double value;  // SI
  Dimension dimension;
};

// Parses "2 mm", "405nm", "38 deg", "16.4 THz", "10 fs", "0.5", "1e-3 m".
// Frequencies given in Hz/MHz/GHz/THz are cyclic and converted to rad/s;
// "rad/s" is taken verbatim. Returns nullopt on an unknown unit or bad number.
std::optional<Quantity> parse_quantity(std::string_view text);

const char* si_unit(Dimension d);
const char* to_string(Dimension d);

}  // namespace units
}  // namespace spdc
