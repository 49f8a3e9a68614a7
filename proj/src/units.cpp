#include "spdc/units.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "spdc/error.hpp"

namespace spdc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::data: return "data";
    case ErrorCode::geometry: return "geometry";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::truncated: return "truncated";
    case ErrorCode::validation: return "validation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

namespace units {

namespace {

struct UnitEntry {
  std::string_view name;
  double scale;
  Dimension dimension;
};

constexpr UnitEntry kUnits[] = {
    {"m", 1.0, Dimension::length},
    {"mm", 1e-3, Dimension::length},
    {"um", 1e-6, Dimension::length},
    {"µm", 1e-6, Dimension::length},
    {"nm", 1e-9, Dimension::length},
    {"rad", 1.0, Dimension::angle},
    {"deg", kPi / 180.0, Dimension::angle},
    {"s", 1.0, Dimension::time},
    {"ps", 1e-12, Dimension::time},
    {"fs", 1e-15, Dimension::time},
    {"rad/s", 1.0, Dimension::frequency},
    {"Hz", kTwoPi, Dimension::frequency},
    {"kHz", kTwoPi * 1e3, Dimension::frequency},
    {"MHz", kTwoPi * 1e6, Dimension::frequency},
    {"GHz", kTwoPi * 1e9, Dimension::frequency},
    {"THz", kTwoPi * 1e12, Dimension::frequency},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Quantity> parse_quantity(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  // strtod accepts the full floating-point grammar; copy for null termination
  const std::string buf(text);
  char* end = nullptr;
  const double number = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str()) return std::nullopt;
  const std::string_view unit = trim(std::string_view(end));
  if (unit.empty()) return Quantity{number, Dimension::dimensionless};
  for (const auto& u : kUnits) {
    if (u.name == unit) return Quantity{number * u.scale, u.dimension};
  }
  return std::nullopt;
}

const char* si_unit(Dimension d) {
  switch (d) {
    case Dimension::length: return "m";
    case Dimension::angle: return "rad";
    case Dimension::frequency: return "rad/s";
    case Dimension::time: return "s";
    case Dimension::dimensionless: return "";
  }
  return "";
}

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::length: return "length";
    case Dimension::angle: return "angle";
    case Dimension::frequency: return "frequency";
    case Dimension::time: return "time";
    case Dimension::dimensionless: return "dimensionless";
  }
  return "?";
}

}  // namespace units
}  // namespace spdc
