#pragma once

#include "jorder/types.hpp"

#include <json.hpp>

#include <filesystem>

namespace jorder {

/// Matrix files are JSON documents of the form
///   {"n": 2, "re": [[...],[...]], "im": [[...],[...]]}
/// where "im" is optional and defaults to zeros. Doubles are written in
/// shortest-round-trip decimal form, so files reload bit-exactly.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

void save_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);

}  // namespace jorder
