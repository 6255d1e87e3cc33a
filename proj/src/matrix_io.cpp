#include "jorder/matrix_io.hpp"

#include <fstream>

namespace jorder {

namespace {

nlohmann::json part_to_json(const Matrix& m, bool imaginary) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void fill_part(Matrix& m, const nlohmann::json& rows, bool imaginary) {
  const auto n = static_cast<Index>(m.rows());
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    throw IoError("matrix file: array has wrong number of rows");
  }
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw IoError("matrix file: row " + std::to_string(i) +
                    " has wrong length");
    }
    for (Index j = 0; j < n; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw IoError("matrix file: non-numeric entry");
      if (imaginary) {
        m(i, j).imag(v.get<double>());
      } else {
        m(i, j).real(v.get<double>());
      }
    }
  }
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json j;
  j["n"] = m.rows();
  j["re"] = part_to_json(m, false);
  if (m.imag().cwiseAbs().maxCoeff() > 0.0) {
    j["im"] = part_to_json(m, true);
  }
  return j;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re")) {
    throw IoError("matrix file: expected object with fields n and re");
  }
  if (!j["n"].is_number_integer()) throw IoError("matrix file: n must be an integer");
  const auto n = j["n"].get<Index>();
  if (n < 1) throw IoError("matrix file: n must be >= 1");
  Matrix m = Matrix::Zero(n, n);
  fill_part(m, j["re"], false);
  if (j.contains("im")) fill_part(m, j["im"], true);
  return m;
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << matrix_to_json(m).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("parse error in " + path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

}  // namespace jorder
