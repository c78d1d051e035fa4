#pragma once

#include <string>

#include <json.hpp>

#include "hessk/matrix.hpp"

namespace hessk {

/// Exchange schema: {"n": int, "entries": [[row], [row], ...]} for a square
/// matrix; doubles round-trip bit-exactly through the shortest decimal
/// representation.
DenseMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::ordered_json matrix_to_json(const DenseMatrix& m);

DenseMatrix load_matrix(const std::string& path);
void save_matrix(const DenseMatrix& m, const std::string& path);

} // namespace hessk
