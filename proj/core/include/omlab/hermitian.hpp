#pragma once

#include <string>
#include <vector>

#include "omlab/complex_matrix.hpp"
#include "omlab/scalar_function.hpp"

namespace omlab {

// n x n complex Hermitian matrix. Construction admits inputs within
// tol::kHermBase * (1 + max|entry|) of Hermitian and symmetrizes exactly.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(const std::vector<double>& d);

  int dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex at(int i, int j) const { return m_.at(i, j); }
  double frobenius_norm() const { return m_.frobenius_norm(); }
  double max_abs_entry() const { return m_.max_abs_entry(); }
  double trace() const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Exact {};  // bypass the admission check for provably Hermitian data
  HermitianMatrix(ComplexMatrix m, Exact) : m_(std::move(m)) {}
  ComplexMatrix m_;

  friend HermitianMatrix assemble_hermitian(const ComplexMatrix&, const std::vector<double>&);
  friend HermitianMatrix symmetrized_product(const HermitianMatrix&, const HermitianMatrix&);
};

// Eigenvalues ascending; columns of eigenvectors are the matching orthonormal basis.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Outcome of a positivity check. positive <=> min_eigenvalue >= -tolerance_used.
struct PsdCertificate {
  bool positive = false;
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;
  std::vector<Complex> witness;  // unit eigenvector attaining min_eigenvalue
  std::string notes;
};

// Cyclic Jacobi diagonalization (max 100 sweeps; converged when the
// off-diagonal Frobenius mass drops below tol::kJacobiOff * ||A||_F).
// Throws ConvergenceError with the residual otherwise.
Spectrum eigh(const HermitianMatrix& A);

// U diag(values) U* for unitary U; exact Hermitian assembly.
HermitianMatrix assemble_hermitian(const ComplexMatrix& U, const std::vector<double>& values);

double spectral_norm(const HermitianMatrix& A);
double min_eigenvalue(const HermitianMatrix& A);

// tol::kPsdBase * (1 + spectral norm).
double default_psd_tol(const HermitianMatrix& A);

PsdCertificate psd_check(const HermitianMatrix& A, double tol);
PsdCertificate psd_check(const HermitianMatrix& A);

// Certificate for A <= B, i.e. psd_check(B - A).
PsdCertificate leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol);
PsdCertificate leq(const HermitianMatrix& A, const HermitianMatrix& B);

// S(A,B) = AB + BA, assembled as P + P* so the result is exactly Hermitian.
HermitianMatrix symmetrized_product(const HermitianMatrix& A, const HermitianMatrix& B);

// U f(Lambda) U*; eigenvalues are snapped onto closed domain endpoints within
// tol::kDomainSnap, and a DomainError names any eigenvalue further out.
HermitianMatrix apply_function(const ScalarFunctionSpec& f, const HermitianMatrix& A);
HermitianMatrix apply_function(const ScalarFunctionSpec& f, const Spectrum& spectrum);

// A (A + lambda I)^{-1} for PSD A and lambda > 0, computed spectrally.
HermitianMatrix resolvent_product(const HermitianMatrix& A, double lambda);

// Spectral square root of a PSD-within-tolerance matrix (tiny negative
// eigenvalues are clamped to zero per the domain-snapping rule).
HermitianMatrix psd_sqrt(const HermitianMatrix& A);

}  // namespace omlab
