#pragma once

#include <utility>
#include <vector>

#include "omlab/hermitian.hpp"
#include "omlab/scalar_function.hpp"
#include "omlab/suite_report.hpp"

namespace omlab {

// Scalar bounds m <= A <= M as multiples of the identity.
struct SpectralWindow {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains_spectrum(const HermitianMatrix& A, double tol) const;
};

// Blocks C_i with equal column dimension; resolution_defect = ||sum C_i*C_i - I||_F.
struct ContractionFamily {
  std::vector<ComplexMatrix> blocks;
  double resolution_defect() const;
};

// Unitary dilations U = [[C, D],[0, -C*]], V = [[C, -D],[0, C*]] of an
// isometry C (D = (I - CC*)^{1/2}); both unitary within 1e-9.
std::pair<ComplexMatrix, ComplexMatrix> build_dilation(const ComplexMatrix& C);

// --- One verifier per statement; each returns a per-instance SuiteReport ---
// Hypothesis violations throw PreconditionError (they are never counted as
// counterexamples); in-hypothesis defects land in report.failures.

// Forward subadditivity: S(A,B) >= 0 implies f(A+B) <= f(A)+f(B) for every
// non-negative operator monotone f in fs.
SuiteReport verify_subadditivity_forward(const HermitianMatrix& A, const HermitianMatrix& B,
                                         const std::vector<ScalarFunctionSpec>& fs, double tol);

// Converse search: S(A,B) indefinite implies some f_lambda on the grid breaks
// subadditivity; also records the decay of ||B X_lambda B + A Y_lambda A||.
// Finding no violation is reported as an inconclusive failure (grid too short).
SuiteReport verify_subadditivity_converse(const HermitianMatrix& A, const HermitianMatrix& B,
                                          const std::vector<double>& lambda_grid, double tol);

// Lower bound on the symmetrized product:
// (1/2) S(A,B) >= (m n - (M-m)(N-n)/8) I for windows [m,M], [n,N].
SuiteReport verify_gustafson(const HermitianMatrix& A, const HermitianMatrix& B,
                             const SpectralWindow& wA, const SpectralWindow& wB, double tol);

// Window criterion (M-m)(N-n) <= 8 m n forces S(A,B) >= 0, hence
// subadditivity of the whole monotone catalog subset.
SuiteReport verify_window_subadditivity(const HermitianMatrix& A, const HermitianMatrix& B,
                                        const SpectralWindow& wA, const SpectralWindow& wB,
                                        const std::vector<ScalarFunctionSpec>& fs, double tol);

// Splitting bound for 0 <= A <= B, p in [0, 1/2]:
// f(B^p) <= f((B^p+A^p)/2) + f((B^p-A^p)/2); also certifies the engine
// identity 2 S(S1,S2) = B^{2p} - A^{2p} >= 0.
SuiteReport verify_power_split(const HermitianMatrix& A, const HermitianMatrix& B, double p,
                               const std::vector<ScalarFunctionSpec>& fs, double tol);

// Isometry compression with spectra in [lo, (1+2*sqrt(2)) lo]:
// (i)  f(C*AC) <= 2 C* f(A/2) C
// (ii) f(sum C_i* A_i C_i) <= 2 sum C_i* f(A_i/2) C_i  for sum C_i*C_i = I.
// For (ii) the per-index reading f(A_i/2) is certified; when all A_i coincide
// the literal common-matrix reading is evaluated alongside and reported.
// Windows wider than the hypothesis run in exploration mode: findings are
// recorded under extra["out_of_hypothesis"], never counted as failures.
SuiteReport verify_hansen_type(const std::vector<HermitianMatrix>& As,
                               const ContractionFamily& family, const SpectralWindow& window,
                               const std::vector<ScalarFunctionSpec>& fs, double tol);

// Square order: B^2 <= A^2 iff f(B) <= f(A) for every operator convex f with
// f'(0+) >= 0. Forward branch certifies the catalog; converse branch confirms
// the t^2 witness; the algebraic identity S(A-B, A+B) = 2(A^2-B^2) is checked
// to machine precision in both branches.
SuiteReport verify_square_order(const HermitianMatrix& A, const HermitianMatrix& B,
                                const std::vector<ScalarFunctionSpec>& fs_convex, double tol);

// B <= A implies f(B^p) <= f(A^p) for operator convex f with f'(0+) >= 0.
SuiteReport verify_power_monotone(const HermitianMatrix& A, const HermitianMatrix& B, double p,
                                  const std::vector<ScalarFunctionSpec>& fs_convex, double tol);

// B <= A implies (i) B^p f(B^p) <= A^p f(A^p) and, for invertible A, B and f
// strictly positive on (0,inf), (ii) A^{p-1} f(A^p) <= B^{p-1} f(B^p).
SuiteReport verify_tf_corollary(const HermitianMatrix& A, const HermitianMatrix& B, double p,
                                const ScalarFunctionSpec& f, double tol);

}  // namespace omlab
