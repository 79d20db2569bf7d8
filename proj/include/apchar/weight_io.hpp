#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "apchar/grid.hpp"

namespace apchar::io {

/// {"dims": [n_1, ..., n_d], "samples": [...]} with row-major samples.
GridWeight parse_weight_json(std::string_view text);

/// One sample per line (d = 1). Blank lines are skipped.
GridWeight parse_weight_csv(std::string_view text);

/// JSON when the first non-blank character is '{', CSV otherwise.
GridWeight parse_weight(std::string_view text);

GridWeight read_weight(const std::filesystem::path& path);

/// Compact JSON; samples use the shortest round-trip decimal form.
std::string weight_to_json(const GridWeight& w);

void write_weight(const std::filesystem::path& path, const GridWeight& w);

}  // namespace apchar::io
