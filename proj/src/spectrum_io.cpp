#include "spdc/spectrum_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spdc/error.hpp"

namespace spdc {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  return out;
}

void header(std::ostream& os, const FileMeta& meta, std::string_view units) {
  if (!meta.title.empty()) os << "# " << meta.title << '\n';
  os << "# units: " << units << '\n';
  if (!meta.scenario_hash.empty()) os << "# scenario: " << meta.scenario_hash << '\n';
  os << "# engine: " << meta.engine << '\n';
  for (const auto& l : meta.lines) os << "# " << l << '\n';
}

void row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

template <class T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    fail(ErrorCode::io, "binary spectrum truncated");
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

constexpr char kMagic[8] = {'S', 'P', 'D', 'C', 'J', 'S', 'A', '\0'};

}  // namespace

void write_spectrum_csv(const std::filesystem::path& path, const JointSpectrum& js,
                        const FileMeta& meta) {
  auto out = open_out(path);
  header(out, meta, "omega_s rad/s, omega_i rad/s (detunings), re, im (max |phi| = 1)");
  out << "# model: " << js.model_tag << (js.cw ? ", cw antidiagonal slice" : ", 2D grid") << '\n';
  out << "# omega_s0: " << format_number(js.grid.omega_s0)
      << " rad/s, omega_i0: " << format_number(js.grid.omega_i0) << " rad/s\n";
  out << "omega_s,omega_i,re,im\n";
  const int n = js.grid.points;
  if (js.cw) {
    for (int i = 0; i < n; ++i)
      row(out, {js.grid.node(i), -js.grid.node(i), js.amplitude[i].real(), js.amplitude[i].imag()});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        row(out, {js.grid.node(i), js.grid.node(j), js.at(i, j).real(), js.at(i, j).imag()});
  }
  if (!out) fail(ErrorCode::io, "write failed: " + path.string());
}

void write_spectrum_binary(const std::filesystem::path& path, const JointSpectrum& js) {
  auto out = open_out(path, true);
  out.write(kMagic, 8);
  put<std::uint32_t>(out, kBinaryVersion);
  put<std::uint32_t>(out, js.cw ? 1u : 0u);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(js.grid.points));
  put<std::uint64_t>(out, js.cw ? 1u : static_cast<std::uint64_t>(js.grid.points));
  put<double>(out, js.grid.omega_s0);
  put<double>(out, js.grid.omega_i0);
  put<double>(out, js.grid.half_span);
  put<double>(out, js.length);
  for (const auto& z : js.amplitude) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  if (!out) fail(ErrorCode::io, "write failed: " + path.string());
}

JointSpectrum read_spectrum_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot read " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    fail(ErrorCode::io, "not a joint-spectrum file: " + path.string());
  const auto version = get<std::uint32_t>(in);
  if (version != kBinaryVersion) fail(ErrorCode::io, "unsupported binary version");
  const auto flags = get<std::uint32_t>(in);
  const auto points = get<std::uint64_t>(in);
  const auto rows = get<std::uint64_t>(in);
  JointSpectrum js;
  js.cw = flags & 1u;
  js.grid.points = static_cast<int>(points);
  js.grid.omega_s0 = get<double>(in);
  js.grid.omega_i0 = get<double>(in);
  js.grid.half_span = get<double>(in);
  js.length = get<double>(in);
  if (rows != (js.cw ? 1u : points)) fail(ErrorCode::io, "inconsistent row count");
  js.amplitude.resize(rows * points);
  for (auto& z : js.amplitude) {
    const double re = get<double>(in);
    z = {re, get<double>(in)};
  }
  js.model_tag = "binary";
  return js;
}

void write_waveform_csv(const std::filesystem::path& path, const BiphotonWaveform& w,
                        const FileMeta& meta) {
  auto out = open_out(path);
  header(out, meta, "tau_fs fs (t1 - t2, centroid at 0), intensity 1/fs, re and im 1/sqrt(fs)");
  out << "# group_delay_fs: " << format_number(w.group_delay / 1e-15) << '\n';
  out << "tau_fs,intensity,re,im\n";
  const double scale = 1.0 / std::sqrt(w.temporal_norm / 1e-15);
  for (std::size_t k = 0; k < w.tau.size(); ++k)
    row(out, {w.tau[k] / 1e-15, w.intensity[k] * 1e-15, w.psi[k].real() * scale,
              w.psi[k].imag() * scale});
  if (!out) fail(ErrorCode::io, "write failed: " + path.string());
}

void write_schmidt_csv(const std::filesystem::path& path, const SchmidtSpectrum& s,
                       const FileMeta& meta) {
  auto out = open_out(path);
  header(out, meta, "n index, lambda dimensionless");
  out << "n,lambda\n";
  for (std::size_t k = 0; k < s.coefficients.size(); ++k)
    row(out, {static_cast<double>(k), s.coefficients[k]});
  out << "# summary: K = " << format_number(s.K) << ", E = " << format_number(s.E)
      << " ebits, modes = " << s.modes << '\n';
  if (!out) fail(ErrorCode::io, "write failed: " + path.string());
}

void write_table_csv(const std::filesystem::path& path, const Table& table, const FileMeta& meta) {
  auto out = open_out(path);
  std::string units;
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    units += (c ? ", " : "") + table.columns[c];
  header(out, meta, units);
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const auto& name = table.columns[c];
    out << (c ? "," : "") << name.substr(0, name.find(' '));
  }
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << format_number(r[c]);
    out << '\n';
  }
  if (!out) fail(ErrorCode::io, "write failed: " + path.string());
}

Table read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read " + path.string());
  Table t;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (!have_columns) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      have_columns = true;
      continue;
    }
    std::vector<double> r;
    while (std::getline(ss, cell, ',')) r.push_back(std::strtod(cell.c_str(), nullptr));
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace spdc
