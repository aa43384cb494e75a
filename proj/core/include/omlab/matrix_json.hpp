#pragma once

#include <string>

#include <json.hpp>

#include "omlab/complex_matrix.hpp"
#include "omlab/hermitian.hpp"

namespace omlab {

// Interchange format: {"n": int, "re": [[float]], "im": [[float]]}.
// Rectangular matrices additionally carry "rows"/"cols" when rows != cols.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json matrix_to_json(const HermitianMatrix& m);

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);
// Enforces the Hermitian admission tolerance on read.
HermitianMatrix hermitian_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace omlab
