#include "haarmoments/matrix_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace haarmoments {

namespace {

Rational entry_component(const nlohmann::json& v, Eigen::Index row, Eigen::Index col,
                         const char* which) {
  try {
    if (v.is_string()) return rational_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return rational_from_double(v.get<double>());
  } catch (const std::exception& e) {
    throw std::invalid_argument("matrix entry at row " + std::to_string(row + 1) + ", col " +
                                std::to_string(col + 1) + ": " + e.what());
  }
  throw std::invalid_argument("matrix entry at row " + std::to_string(row + 1) + ", col " +
                              std::to_string(col + 1) + ": " + std::string(which) +
                              " part must be a \"p/q\" string or a number");
}

}  // namespace

ExactMatrix parse_exact_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix file must be a non-empty JSON array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
  if (cols == 0) throw std::invalid_argument("matrix row 1 must be a non-empty array");
  ExactMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix row " + std::to_string(r + 1) + " has " +
                                  std::to_string(row.is_array() ? row.size() : 0) +
                                  " entries, expected " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row[static_cast<size_t>(c)];
      if (e.is_array()) {
        if (e.size() != 2) {
          throw std::invalid_argument("matrix entry at row " + std::to_string(r + 1) + ", col " +
                                      std::to_string(c + 1) + " must be a [re, im] pair");
        }
        m(r, c) = GaussianRational(entry_component(e[0], r, c, "real"),
                                   entry_component(e[1], r, c, "imaginary"));
      } else {
        m(r, c) = GaussianRational(entry_component(e, r, c, "real"));
      }
    }
  }
  return m;
}

ExactMatrix load_exact_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("matrix file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return parse_exact_matrix(j);
}

nlohmann::json exact_matrix_to_json(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({rational_to_string(m(r, c).re), rational_to_string(m(r, c).im)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace haarmoments
