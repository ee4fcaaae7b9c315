#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "haarmoments/tensor.hpp"

namespace haarmoments {

/// Matrix file format: a JSON array of rows; each entry is [re, im] where
/// re and im are "p/q" strings or plain JSON numbers. Parse errors name the
/// offending row and column.
ExactMatrix parse_exact_matrix(const nlohmann::json& j);
ExactMatrix load_exact_matrix(const std::string& path);

/// Serializes with entries as ["p/q", "p/q"] pairs; exact values never
/// leave as floats.
nlohmann::json exact_matrix_to_json(const ExactMatrix& m);

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m);

}  // namespace haarmoments
