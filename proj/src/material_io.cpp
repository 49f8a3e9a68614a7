#include "spdc/material_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<double> parse_numbers(const std::string& value, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') fail(ErrorCode::data, where + ": bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void check_coefficients(SellmeierForm form, const std::vector<double>& c, const std::string& where) {
  bool ok = false;
  switch (form) {
    case SellmeierForm::constant: ok = c.size() == 1; break;
    case SellmeierForm::sellmeier: ok = c.size() >= 3 && c.size() % 2 == 1; break;
    case SellmeierForm::pole_polynomial: ok = c.size() >= 3; break;
  }
  if (!ok) fail(ErrorCode::data, where + ": wrong coefficient count for form " + to_string(form));
}

}  // namespace

UniaxialMaterial parse_material(std::string_view text, const std::string& origin) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::data, origin + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    entries[key] = {trim(line.substr(eq + 1)), line_no};
  }
  auto need = [&](const std::string& key) -> const std::pair<std::string, int>& {
    auto it = entries.find(key);
    if (it == entries.end()) fail(ErrorCode::data, origin + ": missing key '" + key + "'");
    return it->second;
  };
  for (const auto& [key, val] : entries) {
    static const char* kKnown[] = {"name", "reference", "form", "ordinary", "extraordinary", "range"};
    if (std::none_of(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }))
      fail(ErrorCode::data, origin + ":" + std::to_string(val.second) + ": unknown key '" + key + "'");
  }

  UniaxialMaterial m;
  m.name = need("name").first;
  if (auto it = entries.find("reference"); it != entries.end()) m.reference = it->second.first;
  const auto form = parse_sellmeier_form(need("form").first);
  if (!form) fail(ErrorCode::data, origin + ": unknown form '" + need("form").first + "'");

  const auto range_um = parse_numbers(need("range").first, origin + ": range");
  if (range_um.size() != 2 || !(range_um[0] > 0) || !(range_um[1] > range_um[0]))
    fail(ErrorCode::data, origin + ": range must be 'min, max' in µm with 0 < min < max");
  const WavelengthRange range{range_um[0] * units::um, range_um[1] * units::um};

  for (auto [key, set] : {std::pair{"ordinary", &m.ordinary}, std::pair{"extraordinary", &m.extraordinary}}) {
    const auto& entry = need(key);
    const std::string where = origin + ":" + std::to_string(entry.second);
    set->material = m.name + " (" + key + ")";
    set->form = *form;
    set->coefficients = parse_numbers(entry.first, where);
    set->validity = range;
    check_coefficients(*form, set->coefficients, where);
  }
  m.validate();
  return m;
}

UniaxialMaterial load_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open material file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_material(ss.str(), path.string());
}

std::vector<std::filesystem::path> material_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("SPDC_MATERIALS_DIR")) {
    std::stringstream ss(env);
    std::string dir;
    while (std::getline(ss, dir, ':'))
      if (!dir.empty()) dirs.emplace_back(dir);
  }
  dirs.emplace_back(SPDC_MATERIALS_DIR);
  return dirs;
}

UniaxialMaterial find_material(const std::string& name_or_path) {
  const std::filesystem::path direct(name_or_path);
  if (direct.has_extension() && std::filesystem::exists(direct)) return load_material(direct);
  std::string lower = name_or_path;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (const auto& dir : material_search_path()) {
    const auto candidate = dir / (lower + ".mat");
    if (std::filesystem::exists(candidate)) return load_material(candidate);
  }
  fail(ErrorCode::validation, "unknown material '" + name_or_path + "'");
}

}  // namespace spdc
