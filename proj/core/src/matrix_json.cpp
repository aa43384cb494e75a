#include "omlab/matrix_json.hpp"

#include <fstream>

#include "omlab/errors.hpp"

namespace omlab {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json j;
  j["n"] = m.cols();
  if (!m.square()) {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (int jcol = 0; jcol < m.cols(); ++jcol) {
      re_row.push_back(m.at(i, jcol).real());
      im_row.push_back(m.at(i, jcol).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

nlohmann::json matrix_to_json(const HermitianMatrix& m) { return matrix_to_json(m.matrix()); }

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ValidationError("matrix JSON must be an object with 're' and 'im' arrays");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
    throw ValidationError("matrix JSON 're'/'im' must be equal-shaped non-empty arrays");
  const int rows = static_cast<int>(re.size());
  const int cols = static_cast<int>(re.at(0).size());
  if (j.contains("n") && j.at("n").get<int>() != cols)
    throw ValidationError("matrix JSON 'n' disagrees with the column count");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& re_row = re.at(i);
    const auto& im_row = im.at(i);
    if (static_cast<int>(re_row.size()) != cols || static_cast<int>(im_row.size()) != cols)
      throw ValidationError("matrix JSON rows have inconsistent lengths");
    for (int jcol = 0; jcol < cols; ++jcol)
      m.at(i, jcol) = Complex(re_row.at(jcol).get<double>(), im_row.at(jcol).get<double>());
  }
  return m;
}

HermitianMatrix hermitian_from_json(const nlohmann::json& j) {
  return HermitianMatrix(complex_matrix_from_json(j));
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("failed to parse JSON from '" + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

}  // namespace omlab
