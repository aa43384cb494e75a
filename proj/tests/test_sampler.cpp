#include <cmath>

#include <doctest.h>

#include "omlab/errors.hpp"
#include "omlab/hermitian.hpp"
#include "omlab/sampler.hpp"

using namespace omlab;

namespace {

InstanceSpec spec_of(InstanceKind kind, int dim, std::uint64_t seed) {
  InstanceSpec s;
  s.kind = kind;
  s.dim = dim;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("generation is deterministic in the spec") {
  const Instance a = generate(spec_of(InstanceKind::psd, 4, 123));
  const Instance b = generate(spec_of(InstanceKind::psd, 4, 123));
  CHECK((a.matrices[0] - b.matrices[0]).max_abs_entry() == 0.0);
  const Instance c = generate(spec_of(InstanceKind::psd, 4, 124));
  CHECK((a.matrices[0] - c.matrices[0]).max_abs_entry() != 0.0);
}

TEST_CASE("psd instances are PSD with bounded spectrum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate(spec_of(InstanceKind::psd, 5, seed));
    CHECK(min_eigenvalue(inst.matrices[0]) >= -1e-10);
    CHECK(spectral_norm(inst.matrices[0]) <= 10.0 + 1e-9);
  }
}

TEST_CASE("psd_window pins the spectrum inside the window") {
  InstanceSpec s = spec_of(InstanceKind::psd_window, 4, 9);
  s.window_lo = 2.0;
  s.window_hi = 5.0;
  const Instance inst = generate(s);
  const Spectrum spec = eigh(inst.matrices[0]);
  CHECK(spec.eigenvalues.front() >= 2.0 - 1e-10);
  CHECK(spec.eigenvalues.back() <= 5.0 + 1e-10);
}

TEST_CASE("ordered_pair_leq returns B <= A as (B, A)") {
  const Instance inst = generate(spec_of(InstanceKind::ordered_pair_leq, 4, 17));
  REQUIRE(inst.matrices.size() == 2);
  CHECK(leq(inst.matrices[0], inst.matrices[1]).positive);
}

TEST_CASE("ordered_pair_sq_leq orders the squares") {
  const Instance inst = generate(spec_of(InstanceKind::ordered_pair_sq_leq, 3, 29));
  REQUIRE(inst.matrices.size() == 2);
  const HermitianMatrix a2 = 0.5 * symmetrized_product(inst.matrices[0], inst.matrices[0]);
  const HermitianMatrix b2 = 0.5 * symmetrized_product(inst.matrices[1], inst.matrices[1]);
  CHECK(min_eigenvalue(a2 - b2) >= -1e-10);
}

TEST_CASE("jordan pair kinds deliver the advertised sign of lambda_min(S)") {
  const Instance pos = generate(spec_of(InstanceKind::jordan_positive_pair, 3, 41));
  const HermitianMatrix s_pos = symmetrized_product(pos.matrices[0], pos.matrices[1]);
  CHECK(min_eigenvalue(s_pos) >= -1e-10);

  const Instance neg = generate(spec_of(InstanceKind::jordan_indefinite_pair, 3, 41));
  const HermitianMatrix s_neg = symmetrized_product(neg.matrices[0], neg.matrices[1]);
  const double scale =
      spectral_norm(neg.matrices[0]) * spectral_norm(neg.matrices[1]);
  CHECK(min_eigenvalue(s_neg) < -1e-3 * scale);
}

TEST_CASE("indefinite Jordan pairs are not rare at dim 4") {
  // Coverage requirement: acceptance rate above 1% across 1000 seeds.
  long attempts = 0;
  long accepted = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Instance inst = generate(spec_of(InstanceKind::jordan_indefinite_pair, 4, seed));
    attempts += inst.rejections + 1;
    accepted += 1;
  }
  CHECK(accepted == 1000);
  CHECK(static_cast<double>(accepted) / static_cast<double>(attempts) > 0.01);
}

TEST_CASE("isometries satisfy C*C = I") {
  InstanceSpec s = spec_of(InstanceKind::isometry, 3, 55);
  s.rows = 5;
  const Instance inst = generate(s);
  REQUIRE(inst.blocks.size() == 1);
  const ComplexMatrix& c = inst.blocks[0];
  CHECK(c.rows() == 5);
  CHECK(c.cols() == 3);
  CHECK((c.adjoint() * c - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-10);
}

TEST_CASE("resolution families sum to the identity") {
  InstanceSpec s = spec_of(InstanceKind::resolution_of_identity, 3, 60);
  s.count = 3;
  const Instance inst = generate(s);
  REQUIRE(inst.blocks.size() == 3);
  ComplexMatrix sum(3, 3);
  for (const auto& c : inst.blocks) sum += c.adjoint() * c;
  CHECK((sum - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-10);
}

TEST_CASE("dimension bounds are enforced") {
  CHECK_THROWS_AS(generate(spec_of(InstanceKind::psd, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(generate(spec_of(InstanceKind::psd, 65, 1)), PreconditionError);
}

TEST_CASE("shrink keeps the predicate failing while simplifying") {
  const Instance inst = generate(spec_of(InstanceKind::jordan_indefinite_pair, 4, 77));
  const auto still_indefinite = [](const Instance& i) {
    if (i.matrices.size() != 2) return false;
    const HermitianMatrix s = symmetrized_product(i.matrices[0], i.matrices[1]);
    return min_eigenvalue(s) < -1e-6;
  };
  REQUIRE(still_indefinite(inst));
  const Instance small = shrink(inst, still_indefinite);
  CHECK(still_indefinite(small));
  CHECK(small.matrices[0].dim() <= inst.matrices[0].dim());
}

TEST_CASE("shrink refuses instances that do not fail") {
  const Instance inst = generate(spec_of(InstanceKind::psd, 3, 5));
  CHECK_THROWS_AS(shrink(inst, [](const Instance&) { return false; }), PreconditionError);
}
