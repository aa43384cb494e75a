#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "omlab/complex_matrix.hpp"
#include "omlab/hermitian.hpp"

namespace omlab {

enum class InstanceKind {
  psd,                     // Q diag(|g_i|) Q*
  psd_window,              // eigenvalues uniform in [window_lo, window_hi]
  ordered_pair_leq,        // (B, B+P) with P PSD
  ordered_pair_sq_leq,     // (A, B) with B^2 <= A^2
  jordan_positive_pair,    // PSD pair with S(A,B) PSD
  jordan_indefinite_pair,  // PSD pair with lambda_min(S) < -1e-3 * scale
  isometry,                // rows x cols, C*C = I
  resolution_of_identity,  // count blocks with sum C_i* C_i = I
};

const char* instance_kind_name(InstanceKind k);

struct InstanceSpec {
  int dim = 2;
  InstanceKind kind = InstanceKind::psd;
  std::uint64_t seed = 0;
  double window_lo = 0.0;  // psd_window
  double window_hi = 1.0;
  int rows = 0;  // isometry (cols = dim)
  int count = 0; // resolution_of_identity
};

struct Instance {
  InstanceSpec spec;
  std::vector<HermitianMatrix> matrices;
  std::vector<ComplexMatrix> blocks;  // isometry / resolution factors
  bool fallback_used = false;
  int rejections = 0;
};

// Deterministic in spec (seed included); every instance is re-verified against
// its kind's predicate within 1e-10 before return. Exhausted rejection budgets
// throw GenerationError with acceptance-rate diagnostics.
Instance generate(const InstanceSpec& spec);

// Greedy simplification: principal submatrices, entry rounding to short
// decimals, interpolation toward the identity — each step kept only while the
// predicate still fails; at most 200 predicate evaluations.
Instance shrink(const Instance& instance,
                const std::function<bool(const Instance&)>& failing_predicate);

}  // namespace omlab
