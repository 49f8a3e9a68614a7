#pragma once

// Material data files. Grammar (one `key = value` per line, `#` starts a comment):
//
//   name          = BBO
//   reference     = free text
//   form          = sellmeier | pole-polynomial | constant
//   ordinary      = c0, c1, c2, ...      (λ in µm)
//   extraordinary = c0, c1, c2, ...
//   range         = min, max             (µm)
//
// Files are looked up as <dir>/<name>.mat, lower-case name.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

UniaxialMaterial parse_material(std::string_view text, const std::string& origin = "<text>");
UniaxialMaterial load_material(const std::filesystem::path& path);

/// Directories searched by find_material: $SPDC_MATERIALS_DIR (colon separated),
/// then the directory compiled into the library.
std::vector<std::filesystem::path> material_search_path();

/// Accepts either a bare material name ("bbo") or a path to a .mat file.
UniaxialMaterial find_material(const std::string& name_or_path);

}  // namespace spdc
