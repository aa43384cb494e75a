#pragma once

#include <complex>
#include <vector>

namespace omlab {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. The workhorse container for everything
/// that is not certified Hermitian: rectangular isometries, unitary
/// dilations, intermediate products. Desk scale (n <= 128), no blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * cols_ + j];
  }
  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  double frobenius_norm() const;
  double max_abs_entry() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
  friend ComplexMatrix operator*(double scalar, ComplexMatrix m);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> entries_;
};

/// Apply m to a vector.
std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& x);

/// <x, y> with conjugation on the first argument.
Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y);

double vector_norm(const std::vector<Complex>& x);

/// Assemble a matrix from a 2x2 grid of blocks; block (i,j) may be empty
/// only if its row/column extent is implied by neighbours.
ComplexMatrix block2x2(const ComplexMatrix& a11, const ComplexMatrix& a12,
                       const ComplexMatrix& a21, const ComplexMatrix& a22);

}  // namespace omlab
