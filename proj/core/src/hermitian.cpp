#include "omlab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "omlab/errors.hpp"
#include "omlab/tolerances.hpp"

namespace omlab {

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double off_diagonal_mass(const ComplexMatrix& w) {
  double acc = 0.0;
  const int n = w.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) acc += std::norm(w.at(i, j));
  return std::sqrt(acc);
}

}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw DimensionError("HermitianMatrix requires a square matrix");
  if (m_.rows() < 1) throw DimensionError("HermitianMatrix requires n >= 1");
  const double tau = tol::kHermBase * (1.0 + m_.max_abs_entry());
  const int n = m_.rows();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Complex a = m_.at(i, j);
      const Complex b = std::conj(m_.at(j, i));
      if (std::abs(a - b) > tau) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian within tolerance " << tau << ": entry (" << i << "," << j
            << ") deviates by " << std::abs(a - b);
        throw ValidationError(msg.str());
      }
      const Complex avg = 0.5 * (a + b);
      if (i == j) {
        m_.at(i, i) = Complex(avg.real(), 0.0);
      } else {
        m_.at(i, j) = avg;
        m_.at(j, i) = std::conj(avg);
      }
    }
  }
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(ComplexMatrix::identity(n), Exact{});
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return HermitianMatrix(ComplexMatrix(n, n), Exact{});
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return HermitianMatrix(std::move(m), Exact{});
}

double HermitianMatrix::trace() const {
  double acc = 0.0;
  for (int i = 0; i < dim(); ++i) acc += m_.at(i, i).real();
  return acc;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Exact{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Exact{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.m_, HermitianMatrix::Exact{});
}

Spectrum eigh(const HermitianMatrix& A) {
  const int n = A.dim();
  ComplexMatrix w = A.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm_a = w.frobenius_norm();

  if (norm_a > 0.0) {
    const double threshold = tol::kJacobiOff * norm_a;
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_mass(w) < threshold) {
        converged = true;
        break;
      }
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const Complex beta = w.at(p, q);
          const double b = std::abs(beta);
          if (b == 0.0) continue;
          const double alpha = w.at(p, p).real();
          const double gamma = w.at(q, q).real();
          const double tau = (alpha - gamma) / (2.0 * b);
          // Smaller-magnitude root of t^2 + 2 tau t - 1 = 0 (stable choice).
          double t;
          if (tau >= 0.0)
            t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
          else
            t = 1.0 / (tau - std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double sigma = t * c;
          const Complex phase = beta / b;
          const Complex s = sigma * std::conj(phase);

          // Rows/columns p and q of W <- J* W J with J(p,p)=c, J(p,q)=-conj(s),
          // J(q,p)=s, J(q,q)=c.
          for (int k = 0; k < n; ++k) {
            if (k == p || k == q) continue;
            const Complex wkp = w.at(k, p);
            const Complex wkq = w.at(k, q);
            w.at(k, p) = c * wkp + s * wkq;
            w.at(k, q) = -std::conj(s) * wkp + c * wkq;
            w.at(p, k) = std::conj(w.at(k, p));
            w.at(q, k) = std::conj(w.at(k, q));
          }
          w.at(p, p) = Complex(c * c * alpha + 2.0 * b * c * sigma + sigma * sigma * gamma, 0.0);
          w.at(q, q) = Complex(sigma * sigma * alpha - 2.0 * b * c * sigma + c * c * gamma, 0.0);
          w.at(p, q) = Complex(0.0, 0.0);
          w.at(q, p) = Complex(0.0, 0.0);

          for (int k = 0; k < n; ++k) {
            const Complex vkp = v.at(k, p);
            const Complex vkq = v.at(k, q);
            v.at(k, p) = c * vkp + s * vkq;
            v.at(k, q) = -std::conj(s) * vkp + c * vkq;
          }
        }
      }
    }
    if (!converged) {
      const double residual = off_diagonal_mass(w);
      if (residual >= threshold)
        throw ConvergenceError("Jacobi eigensolver did not converge after 100 sweeps; "
                               "off-diagonal residual " + format_double(residual),
                               residual);
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double di = w.at(i, i).real();
    const double dj = w.at(j, j).real();
    return di < dj || (di == dj && i < j);
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = w.at(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors.at(i, j) = v.at(i, order[j]);
  }
  return out;
}

HermitianMatrix assemble_hermitian(const ComplexMatrix& U, const std::vector<double>& values) {
  if (!U.square() || static_cast<size_t>(U.rows()) != values.size())
    throw DimensionError("assemble_hermitian: U must be n x n with n values");
  const int n = U.rows();
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k) diag += values[k] * std::norm(U.at(i, k));
    m.at(i, i) = Complex(diag, 0.0);
    for (int j = i + 1; j < n; ++j) {
      Complex acc{};
      for (int k = 0; k < n; ++k) acc += values[k] * U.at(i, k) * std::conj(U.at(j, k));
      m.at(i, j) = acc;
      m.at(j, i) = std::conj(acc);
    }
  }
  return HermitianMatrix(std::move(m), HermitianMatrix::Exact{});
}

double spectral_norm(const HermitianMatrix& A) {
  const Spectrum s = eigh(A);
  return std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
}

double min_eigenvalue(const HermitianMatrix& A) { return eigh(A).eigenvalues.front(); }

double default_psd_tol(const HermitianMatrix& A) {
  return tol::kPsdBase * (1.0 + spectral_norm(A));
}

PsdCertificate psd_check(const HermitianMatrix& A, double tol) {
  if (tol < 0.0) throw PreconditionError("psd_check requires tol >= 0");
  const Spectrum s = eigh(A);
  PsdCertificate cert;
  cert.min_eigenvalue = s.eigenvalues.front();
  cert.tolerance_used = tol;
  cert.positive = cert.min_eigenvalue >= -tol;
  cert.witness.resize(A.dim());
  for (int i = 0; i < A.dim(); ++i) cert.witness[i] = s.eigenvectors.at(i, 0);
  return cert;
}

PsdCertificate psd_check(const HermitianMatrix& A) { return psd_check(A, default_psd_tol(A)); }

PsdCertificate leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("leq: dimension mismatch");
  return psd_check(B - A, tol);
}

PsdCertificate leq(const HermitianMatrix& A, const HermitianMatrix& B) {
  if (A.dim() != B.dim()) throw DimensionError("leq: dimension mismatch");
  const HermitianMatrix d = B - A;
  return psd_check(d, default_psd_tol(d));
}

HermitianMatrix symmetrized_product(const HermitianMatrix& A, const HermitianMatrix& B) {
  if (A.dim() != B.dim()) throw DimensionError("symmetrized_product: dimension mismatch");
  const ComplexMatrix p = A.matrix() * B.matrix();
  // AB + BA = P + P* for Hermitian A, B: exactly Hermitian by construction.
  return HermitianMatrix(p + p.adjoint(), HermitianMatrix::Exact{});
}

HermitianMatrix apply_function(const ScalarFunctionSpec& f, const Spectrum& spectrum) {
  std::vector<double> mapped(spectrum.eigenvalues.size());
  for (size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    const auto snapped = f.domain.snap(spectrum.eigenvalues[i]);
    if (!snapped) {
      throw DomainError("eigenvalue " + format_double(spectrum.eigenvalues[i]) +
                            " lies outside the domain of '" + f.display_name() + "'",
                        spectrum.eigenvalues[i]);
    }
    mapped[i] = f.eval(*snapped);
  }
  return assemble_hermitian(spectrum.eigenvectors, mapped);
}

HermitianMatrix apply_function(const ScalarFunctionSpec& f, const HermitianMatrix& A) {
  return apply_function(f, eigh(A));
}

HermitianMatrix resolvent_product(const HermitianMatrix& A, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("resolvent_product requires lambda > 0");
  const Spectrum s = eigh(A);
  const double tol = tol::kPsdBase * (1.0 + std::max(std::abs(s.eigenvalues.front()),
                                                     std::abs(s.eigenvalues.back())));
  if (s.eigenvalues.front() < -tol)
    throw PreconditionError("resolvent_product requires a PSD input (min eigenvalue " +
                            format_double(s.eigenvalues.front()) + ")");
  std::vector<double> mapped(s.eigenvalues.size());
  for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const double mu = std::max(s.eigenvalues[i], 0.0);
    mapped[i] = mu / (mu + lambda);
  }
  return assemble_hermitian(s.eigenvectors, mapped);
}

HermitianMatrix psd_sqrt(const HermitianMatrix& A) {
  const Spectrum s = eigh(A);
  const double tol = tol::kPsdBase * (1.0 + std::max(std::abs(s.eigenvalues.front()),
                                                     std::abs(s.eigenvalues.back())));
  if (s.eigenvalues.front() < -tol)
    throw PreconditionError("psd_sqrt requires a PSD input (min eigenvalue " +
                            format_double(s.eigenvalues.front()) + ")");
  std::vector<double> mapped(s.eigenvalues.size());
  for (size_t i = 0; i < s.eigenvalues.size(); ++i)
    mapped[i] = std::sqrt(std::max(s.eigenvalues[i], 0.0));
  return assemble_hermitian(s.eigenvectors, mapped);
}

}  // namespace omlab
