#include <cmath>

#include <doctest.h>

#include "omlab/errors.hpp"
#include "omlab/inequalities.hpp"
#include "omlab/sampler.hpp"
#include "test_helpers.hpp"

using namespace omlab;
using omlab::testing::herm;

namespace {

const HermitianMatrix kProjA = herm({{1, 0}, {0, 0}});
const HermitianMatrix kOnesB = herm({{1, 1}, {1, 1}});

std::vector<double> lambda_grid() {
  std::vector<double> g;
  for (int k = -5; k <= 25; ++k) g.push_back(std::ldexp(1.0, k));
  return g;
}

}  // namespace

TEST_CASE("the canonical indefinite pair has lambda_min(S) = 1 - sqrt(2)") {
  const HermitianMatrix s = symmetrized_product(kProjA, kOnesB);
  CHECK(min_eigenvalue(s) == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("forward subadditivity on commuting input has a hand-checkable margin") {
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  const SuiteReport r = verify_subadditivity_forward(
      eye, eye, {lookup("f_lambda", {{"lambda", 1.0}})}, 1e-8);
  CHECK(r.passed());
  // 2 f(1) - f(2) = 1 - 2/3 = 1/3 on both eigenvalues.
  const double margin = r.extra.at("cases").at(0).at("margin").get<double>();
  CHECK(margin == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("forward subadditivity rejects indefinite Jordan products") {
  CHECK_THROWS_AS(
      verify_subadditivity_forward(kProjA, kOnesB, monotone_subset(), 1e-8),
      PreconditionError);
}

TEST_CASE("converse search finds a violating lambda for the canonical pair") {
  const SuiteReport r = verify_subadditivity_converse(kProjA, kOnesB, lambda_grid(), 1e-8);
  CHECK(r.passed());
  CHECK_FALSE(r.extra.at("found_lambda").is_null());
  CHECK(r.extra.at("worst_defect").get<double>() < -1e-8);

  // The proof-side coupling norm decays along the grid.
  const auto& grid = r.extra.at("grid");
  const double first = grid.front().at("coupling_norm").get<double>();
  const double last = grid.back().at("coupling_norm").get<double>();
  CHECK(last < first);
  CHECK(last < 1e-5);
}

TEST_CASE("converse search requires a decisively indefinite product") {
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  CHECK_THROWS_AS(verify_subadditivity_converse(eye, eye, lambda_grid(), 1e-8),
                  PreconditionError);
}

TEST_CASE("gustafson bound is tight on scalar multiples of the identity") {
  const HermitianMatrix a = HermitianMatrix::diagonal({3.0, 3.0});
  const SuiteReport r = verify_gustafson(a, a, {3.0, 3.0}, {3.0, 3.0}, 1e-8);
  CHECK(r.passed());
  const double margin = r.extra.at("cases").at(0).at("margin").get<double>();
  CHECK(std::abs(margin) <= 1e-10);  // (1/2)S - m^2 I = 0 exactly
}

TEST_CASE("gustafson certifies the canonical pair against its spectral windows") {
  // Windows: spec(A) in [0,1], spec(B) in [0,2] -> bound = -1/4, while
  // lambda_min(S)/2 = (1-sqrt(2))/2 ~ -0.207 > -1/4.
  const SuiteReport r = verify_gustafson(kProjA, kOnesB, {0.0, 1.0}, {0.0, 2.0}, 1e-8);
  CHECK(r.passed());
  const double margin = r.extra.at("cases").at(0).at("margin").get<double>();
  CHECK(margin == doctest::Approx((1.0 - std::sqrt(2.0)) / 2.0 + 0.25).epsilon(1e-10));
}

TEST_CASE("gustafson rejects spectra outside the declared window") {
  CHECK_THROWS_AS(verify_gustafson(HermitianMatrix::diagonal({1.0, 5.0}),
                                   HermitianMatrix::identity(2), {2.0, 3.0}, {0.5, 2.0}, 1e-8),
                  PreconditionError);
}

TEST_CASE("window subadditivity enforces the width condition") {
  const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 9.0});
  CHECK_THROWS_AS(
      verify_window_subadditivity(a, a, {1.0, 10.0}, {1.0, 10.0}, monotone_subset(), 1e-8),
      PreconditionError);
}

TEST_CASE("window subadditivity passes inside the window criterion") {
  InstanceSpec s;
  s.kind = InstanceKind::psd_window;
  s.dim = 3;
  s.seed = 8;
  s.window_lo = 1.0;
  s.window_hi = 3.5;  // ratio 3.5 < 1 + 2 sqrt(2)
  const HermitianMatrix a = generate(s).matrices[0];
  s.seed = 9;
  const HermitianMatrix b = generate(s).matrices[0];
  const SuiteReport r =
      verify_window_subadditivity(a, b, {1.0, 3.5}, {1.0, 3.5}, monotone_subset(), 1e-8);
  CHECK(r.passed());
}

TEST_CASE("power split certifies its engine identity on commuting input") {
  const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 4.0});
  const HermitianMatrix b = HermitianMatrix::diagonal({2.0, 6.0});
  const SuiteReport r = verify_power_split(a, b, 0.5, monotone_subset(), 1e-8);
  CHECK(r.passed());
  CHECK(r.trials == 2 + 9);
}

TEST_CASE("power split validates p and the order hypothesis") {
  const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 4.0});
  const HermitianMatrix b = HermitianMatrix::diagonal({2.0, 6.0});
  CHECK_THROWS_AS(verify_power_split(a, b, 0.7, monotone_subset(), 1e-8), PreconditionError);
  CHECK_THROWS_AS(verify_power_split(b, a, 0.5, monotone_subset(), 1e-8), PreconditionError);
}

TEST_CASE("dilation of a coordinate isometry is unitary with the expected blocks") {
  ComplexMatrix c(2, 1);
  c.at(0, 0) = 1.0;
  const auto [u, v] = build_dilation(c);
  CHECK(u.rows() == 3);
  // D = (I - CC*)^{1/2} = diag(0, 1).
  CHECK(std::abs(u.at(0, 1)) == doctest::Approx(0.0));
  CHECK(std::abs(u.at(1, 2)) == doctest::Approx(1.0));
  CHECK((u.adjoint() * u - ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);
  CHECK((v.adjoint() * v - ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);

  ComplexMatrix not_isometry(2, 1);
  not_isometry.at(0, 0) = 2.0;
  CHECK_THROWS_AS(build_dilation(not_isometry), PreconditionError);
}

TEST_CASE("hansen-type bound holds for sampled isometries inside the window") {
  InstanceSpec a_spec;
  a_spec.kind = InstanceKind::psd_window;
  a_spec.dim = 4;
  a_spec.seed = 3;
  a_spec.window_lo = 1.0;
  a_spec.window_hi = 1.0 + 2.0 * std::sqrt(2.0);
  InstanceSpec c_spec;
  c_spec.kind = InstanceKind::isometry;
  c_spec.dim = 2;
  c_spec.rows = 4;
  c_spec.seed = 4;
  const HermitianMatrix a = generate(a_spec).matrices[0];
  const ComplexMatrix c = generate(c_spec).blocks[0];
  const SuiteReport r = verify_hansen_type(
      {a}, {{c}}, {1.0, 1.0 + 2.0 * std::sqrt(2.0)}, monotone_subset(), 1e-8);
  CHECK(r.passed());
  CHECK(r.params.at("in_hypothesis").get<bool>());
}

TEST_CASE("hansen-type verifier runs wide windows in exploration mode") {
  InstanceSpec a_spec;
  a_spec.kind = InstanceKind::psd_window;
  a_spec.dim = 4;
  a_spec.seed = 5;
  a_spec.window_lo = 1.0;
  a_spec.window_hi = 5.0;
  InstanceSpec c_spec;
  c_spec.kind = InstanceKind::isometry;
  c_spec.dim = 2;
  c_spec.rows = 4;
  c_spec.seed = 6;
  const HermitianMatrix a = generate(a_spec).matrices[0];
  const ComplexMatrix c = generate(c_spec).blocks[0];
  const SuiteReport r = verify_hansen_type({a}, {{c}}, {1.0, 5.0}, monotone_subset(), 1e-8);
  CHECK(r.passed());  // wide-window findings are recorded, never asserted
  CHECK_FALSE(r.params.at("in_hypothesis").get<bool>());
  CHECK(r.extra.contains("out_of_hypothesis"));
}

TEST_CASE("hansen-type family form accepts shared and per-index matrices") {
  InstanceSpec f_spec;
  f_spec.kind = InstanceKind::resolution_of_identity;
  f_spec.dim = 3;
  f_spec.count = 2;
  f_spec.seed = 11;
  const Instance fam = generate(f_spec);
  InstanceSpec a_spec;
  a_spec.kind = InstanceKind::psd_window;
  a_spec.dim = 3;
  a_spec.window_lo = 1.0;
  a_spec.window_hi = 3.0;
  a_spec.seed = 12;
  const HermitianMatrix a1 = generate(a_spec).matrices[0];
  a_spec.seed = 13;
  const HermitianMatrix a2 = generate(a_spec).matrices[0];
  const SpectralWindow w{1.0, 3.0};

  const SuiteReport per_index =
      verify_hansen_type({a1, a2}, {fam.blocks}, w, monotone_subset(), 1e-8);
  CHECK(per_index.passed());
  const SuiteReport shared = verify_hansen_type({a1}, {fam.blocks}, w, monotone_subset(), 1e-8);
  CHECK(shared.passed());
  CHECK(shared.extra.at("literal_common_reading").get<std::string>().find("coincides") !=
        std::string::npos);
}

TEST_CASE("hansen-type verifier rejects families that do not resolve the identity") {
  ComplexMatrix half = ComplexMatrix::identity(2);
  half.at(0, 0) = 0.5;
  ContractionFamily family{{half}};
  CHECK_THROWS_AS(
      verify_hansen_type({HermitianMatrix::identity(2)}, family, {0.5, 1.5}, monotone_subset(),
                         1e-8),
      PreconditionError);
}

TEST_CASE("square order takes the forward branch on ordered squares") {
  const HermitianMatrix a = HermitianMatrix::diagonal({2.0, 3.0});
  const HermitianMatrix b = HermitianMatrix::diagonal({1.0, 2.0});
  const SuiteReport r = verify_square_order(a, b, convex_subset(), 1e-8);
  CHECK(r.passed());
  CHECK(r.extra.at("branch") == "forward");
}

TEST_CASE("square order exhibits the t^2 witness on the converse branch") {
  const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 2.0});
  const HermitianMatrix b = HermitianMatrix::diagonal({2.0, 1.0});
  const SuiteReport r = verify_square_order(a, b, convex_subset(), 1e-8);
  CHECK(r.passed());
  CHECK(r.extra.at("branch") == "converse");
  CHECK(r.extra.at("square_order_min_eigenvalue").get<double>() < -1e-8);
}

TEST_CASE("the polarization remark holds to machine precision on random pairs") {
  const Instance inst = generate([] {
    InstanceSpec s;
    s.kind = InstanceKind::jordan_positive_pair;
    s.dim = 5;
    s.seed = 2024;
    return s;
  }());
  const SuiteReport r = verify_square_order(inst.matrices[0], inst.matrices[1],
                                            convex_subset(), 1e-8);
  bool found = false;
  for (const auto& c : r.extra.at("cases"))
    if (c.at("label") == "remark-identity") {
      found = true;
      CHECK(c.at("margin").get<double>() >= -1e-10);
    }
  CHECK(found);
}

TEST_CASE("power monotone transfer holds on ordered diagonal input") {
  const HermitianMatrix a = HermitianMatrix::diagonal({2.0, 3.0});
  const HermitianMatrix b = HermitianMatrix::diagonal({1.0, 2.0});
  const SuiteReport r = verify_power_monotone(a, b, 0.5, convex_subset(), 1e-8);
  CHECK(r.passed());
  CHECK_THROWS_AS(verify_power_monotone(b, a, 0.5, convex_subset(), 1e-8), PreconditionError);
}

TEST_CASE("tf corollary certifies both directions on an invertible ordered pair") {
  const HermitianMatrix a = HermitianMatrix::diagonal({4.0, 9.0});
  const HermitianMatrix b = HermitianMatrix::diagonal({1.0, 4.0});
  const SuiteReport r =
      verify_tf_corollary(a, b, 0.5, lookup("power", {{"p", 0.5}}), 1e-8);
  CHECK(r.passed());
  CHECK(r.trials == 2);

  // t^{3/4} gap on the first branch: 4^{3/4} - 1.
  const double part_i = r.extra.at("cases").at(0).at("margin").get<double>();
  CHECK(part_i == doctest::Approx(std::pow(4.0, 0.75) - 1.0).epsilon(1e-10));
}

TEST_CASE("tf corollary guards singular input and non-monotone f") {
  const HermitianMatrix a = HermitianMatrix::diagonal({4.0, 9.0});
  const HermitianMatrix singular = HermitianMatrix::diagonal({0.0, 1.0});
  CHECK_THROWS_AS(verify_tf_corollary(a, singular, 0.5, lookup("power", {{"p", 0.5}}), 1e-8),
                  PreconditionError);
  CHECK_THROWS_AS(verify_tf_corollary(a, HermitianMatrix::identity(2), 0.5,
                                      lookup("t_squared"), 1e-8),
                  PreconditionError);
}
