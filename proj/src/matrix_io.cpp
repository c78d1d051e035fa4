#include "hessk/matrix_io.hpp"

#include <fstream>

namespace hessk {

DenseMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
        throw BadRangeError("matrix JSON must carry \"n\" and \"entries\"");
    }
    const int n = j.at("n").get<int>();
    if (n < 1) throw BadRangeError("matrix JSON: n must be positive");
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        throw BadRangeError("matrix JSON: entries must hold n rows");
    }
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw BadRangeError("matrix JSON: each row must hold n numbers");
        }
        for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return DenseMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(flat));
}

nlohmann::ordered_json matrix_to_json(const DenseMatrix& m) {
    require_square(m, "matrix_to_json");
    nlohmann::ordered_json j;
    j["n"] = static_cast<int>(m.rows());
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

DenseMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file: " + path);
    nlohmann::json j;
    in >> j;
    return matrix_from_json(j);
}

void save_matrix(const DenseMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write matrix file: " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

} // namespace hessk
