#pragma once

#include <cstdint>
#include <vector>

#include "omlab/hermitian.hpp"
#include "omlab/scalar_function.hpp"
#include "omlab/suite_report.hpp"

namespace omlab {

// First divided differences of f at k distinct points; diagonal carries f'.
// PSD at every k-point set characterizes k-monotonicity.
struct LoewnerMatrix {
  std::vector<double> points;
  std::vector<double> entries;  // k x k, row-major, real symmetric
  int merged_points = 0;        // points dropped for violating the merge gap

  int order() const { return static_cast<int>(points.size()); }
  double at(int i, int j) const { return entries[static_cast<size_t>(i) * points.size() + j]; }
  HermitianMatrix as_hermitian() const;
};

LoewnerMatrix loewner_matrix(const ScalarFunctionSpec& f, std::vector<double> points);

// PSD certificate of the divided-difference matrix; points closer than the
// merge gap are deduplicated and noted in the certificate.
PsdCertificate loewner_certificate(const ScalarFunctionSpec& f, std::vector<double> points,
                                   double tol);

// Randomized order-n monotonicity certificate: `trials` point sets of size n
// (log-uniform on unbounded intervals, uniform otherwise); failing point sets
// are reported verbatim. A pass certifies n-monotonicity only.
SuiteReport order_n_monotone(const ScalarFunctionSpec& f, int n, int trials, std::uint64_t seed,
                             Interval interval, double tol = 1e-9);

// Certificate of (f(A)+f(B))/2 - f((A+B)/2) >= 0.
PsdCertificate midpoint_convexity_check(const ScalarFunctionSpec& f, const HermitianMatrix& A,
                                        const HermitianMatrix& B, double tol);

// Log-polar grid on the upper half-plane.
struct PickGridSpec {
  int moduli = 24;
  int arguments = 32;
  double modulus_lo = 1e-3;
  double modulus_hi = 1e3;
};

struct PickSample {
  Complex z;
  Complex value;
};

struct PickReport {
  std::vector<PickSample> grid;
  double min_im = 0.0;
  double min_re = 0.0;
  bool is_pick_on_grid = false;            // min_im >= -tol::kPick
  bool is_first_quadrant_on_grid = false;  // additionally min_re >= -tol::kPick
};

PickReport pick_scan(const ScalarFunctionSpec& f, const PickGridSpec& grid = {});

// Order-n certificate of f o g for operator-convex f with f'(0+) >= 0 and
// non-negative operator-monotone g; the report carries pick_scan(g) so both
// directions of the first-quadrant equivalence are inspectable.
SuiteReport composition_monotone_check(const ScalarFunctionSpec& f, const ScalarFunctionSpec& g,
                                       int n, int trials, std::uint64_t seed);

}  // namespace omlab
