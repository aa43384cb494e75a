#include "omlab/complex_matrix.hpp"

#include <cmath>

#include "omlab/errors.hpp"

namespace omlab {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw DimensionError("matrix dimensions must be non-negative");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<size_t>(rows) * cols)
    throw DimensionError("entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = std::conj(at(i, j));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& e : entries_) acc += std::norm(e);
  return std::sqrt(acc);
}

double ComplexMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionError("matrix addition: shape mismatch");
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionError("matrix subtraction: shape mismatch");
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw DimensionError("matrix product: inner dimension mismatch");
  ComplexMatrix out(lhs.rows_, rhs.cols_);
  for (int i = 0; i < lhs.rows_; ++i) {
    for (int k = 0; k < lhs.cols_; ++k) {
      const Complex a = lhs.at(i, k);
      if (a == Complex{}) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(double scalar, ComplexMatrix m) { return m *= Complex(scalar, 0.0); }

std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& x) {
  if (static_cast<size_t>(m.cols()) != x.size())
    throw DimensionError("matvec: dimension mismatch");
  std::vector<Complex> y(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Complex acc{};
    for (int j = 0; j < m.cols(); ++j) acc += m.at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.size() != y.size()) throw DimensionError("inner: length mismatch");
  Complex acc{};
  for (size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double vector_norm(const std::vector<Complex>& x) {
  double acc = 0.0;
  for (const auto& e : x) acc += std::norm(e);
  return std::sqrt(acc);
}

ComplexMatrix block2x2(const ComplexMatrix& a11, const ComplexMatrix& a12,
                       const ComplexMatrix& a21, const ComplexMatrix& a22) {
  const int r1 = a11.rows(), r2 = a22.rows();
  const int c1 = a11.cols(), c2 = a22.cols();
  if (a12.rows() != r1 || a12.cols() != c2 || a21.rows() != r2 || a21.cols() != c1)
    throw DimensionError("block2x2: inconsistent block shapes");
  ComplexMatrix out(r1 + r2, c1 + c2);
  for (int i = 0; i < r1; ++i) {
    for (int j = 0; j < c1; ++j) out.at(i, j) = a11.at(i, j);
    for (int j = 0; j < c2; ++j) out.at(i, c1 + j) = a12.at(i, j);
  }
  for (int i = 0; i < r2; ++i) {
    for (int j = 0; j < c1; ++j) out.at(r1 + i, j) = a21.at(i, j);
    for (int j = 0; j < c2; ++j) out.at(r1 + i, c1 + j) = a22.at(i, j);
  }
  return out;
}

}  // namespace omlab
