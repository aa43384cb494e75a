#pragma once

#include <complex>
#include <vector>

#include "omlab/complex_matrix.hpp"
#include "omlab/hermitian.hpp"

namespace omlab::testing {

inline ComplexMatrix real_matrix(const std::vector<std::vector<double>>& rows) {
  ComplexMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

inline HermitianMatrix herm(const std::vector<std::vector<double>>& rows) {
  return HermitianMatrix(real_matrix(rows));
}

inline double entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs_entry();
}

inline double entry_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a - b).max_abs_entry();
}

}  // namespace omlab::testing
