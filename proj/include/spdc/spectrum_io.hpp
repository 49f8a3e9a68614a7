#pragma once

// File formats. CSV files are comma separated with `#` comment headers that
// carry units, the scenario hash and the engine version; numbers use %.17g.
//
// Binary joint spectrum (little endian):
//   0  char[8] "SPDCJSA\0"     32  f64 omega_s0 (rad/s)
//   8  u32 version (1)         40  f64 omega_i0 (rad/s)
//  12  u32 flags (bit 0: cw)   48  f64 half_span (rad/s)
//  16  u64 points per axis     56  f64 crystal length (m)
//  24  u64 rows (1 for cw)
// followed by rows × points pairs (re, im) of f64.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/entanglement.hpp"
#include "spdc/phase_matching.hpp"

namespace spdc {

inline constexpr std::uint32_t kBinaryVersion = 1;

struct FileMeta {
  std::string title;
  std::string scenario_hash;
  std::string engine = std::string("spdc ") + SPDC_VERSION;
  std::vector<std::string> lines;  // extra header comments
};

std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t v);

/// "%.17g"
std::string format_number(double v);

/// Columns omega_s, omega_i (rad/s), re, im.
void write_spectrum_csv(const std::filesystem::path& path, const JointSpectrum& js,
                        const FileMeta& meta);
void write_spectrum_binary(const std::filesystem::path& path, const JointSpectrum& js);
JointSpectrum read_spectrum_binary(const std::filesystem::path& path);

/// Columns tau_fs, intensity (1/fs, unit area), re, im (1/sqrt(fs)).
void write_waveform_csv(const std::filesystem::path& path, const BiphotonWaveform& w,
                        const FileMeta& meta);

/// Columns n, lambda, then a `# summary` line with K and E.
void write_schmidt_csv(const std::filesystem::path& path, const SchmidtSpectrum& s,
                       const FileMeta& meta);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table_csv(const std::filesystem::path& path, const Table& table, const FileMeta& meta);

/// Reads the numeric rows of any CSV written here; comment lines are skipped.
Table read_table_csv(const std::filesystem::path& path);

}  // namespace spdc
