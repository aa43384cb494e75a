#include <cmath>
#include <vector>

#include <doctest.h>

#include "omlab/errors.hpp"
#include "omlab/integral_representation.hpp"
#include "omlab/scalar_function.hpp"

using namespace omlab;

namespace {

std::vector<double> grid_0p1_to_10(int n = 50) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(0.1 + (10.0 - 0.1) * i / (n - 1));
  return g;
}

double max_rel_err(const ScalarFunctionSpec& f) {
  REQUIRE(f.representation.has_value());
  double worst = 0.0;
  for (double t : grid_0p1_to_10()) {
    const double exact = f.eval(t);
    const double rec = reconstruct(*f.representation, t);
    worst = std::max(worst, std::abs(rec - exact) / std::abs(exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("atom representation of f_lambda reconstructs exactly") {
  CHECK(max_rel_err(lookup("f_lambda", {{"lambda", 2.5}})) < 1e-14);
}

TEST_CASE("affine pieces reconstruct exactly") {
  CHECK(max_rel_err(lookup("affine", {{"c", 2.0}, {"b", 3.0}})) < 1e-15);
  CHECK(max_rel_err(lookup("constant", {{"c", 4.0}})) < 1e-15);
  CHECK(max_rel_err(lookup("power", {{"p", 1.0}})) < 1e-15);
  CHECK(max_rel_err(lookup("t_squared")) < 1e-15);
}

TEST_CASE("power densities hit quadrature accuracy far beyond the contract") {
  // Contract is 1e-6 relative; double-exponential quadrature gives ~1e-12.
  CHECK(max_rel_err(lookup("power", {{"p", 0.5}})) < 1e-9);
  CHECK(max_rel_err(lookup("power", {{"p", 0.3}})) < 1e-9);
  CHECK(max_rel_err(lookup("power", {{"p", 0.25}})) < 1e-9);
  CHECK(max_rel_err(lookup("power", {{"p", 0.75}})) < 1e-9);
  CHECK(max_rel_err(lookup("power2p", {{"p", 0.25}})) < 1e-9);
}

TEST_CASE("log1p density on [1, inf) reconstructs") {
  CHECK(max_rel_err(lookup("log1p")) < 1e-9);
}

TEST_CASE("convex kernel representations reconstruct") {
  CHECK(max_rel_err(lookup("convex_kernel", {{"lambda", 1.0}})) < 1e-14);
  CHECK(max_rel_err(lookup("t_power", {{"p", 0.5}})) < 1e-9);   // t^{1.5}
  CHECK(max_rel_err(lookup("t_log1p")) < 1e-9);                 // t log(1+t)
  CHECK(max_rel_err(times_t(lookup("power", {{"p", 0.3}}))) < 1e-9);
}

TEST_CASE("slow exponents carry no density fixture") {
  CHECK_FALSE(lookup("power", {{"p", 0.95}}).representation.has_value());
  CHECK(lookup("power", {{"p", 0.9}}).representation.has_value());
}

TEST_CASE("reconstruct validates its inputs") {
  const IntegralRepresentation rep = *lookup("power", {{"p", 0.5}}).representation;
  CHECK_THROWS_AS(reconstruct(rep, -1.0), PreconditionError);

  IntegralRepresentation bad = rep;
  bad.decay_exponent = 1.0;  // declared tail too heavy to integrate
  CHECK_THROWS_AS(reconstruct(bad, 1.0), RepresentationError);

  IntegralRepresentation negative = rep;
  negative.density = [](double) { return -1.0; };
  CHECK_THROWS_AS(reconstruct(negative, 1.0), RepresentationError);
}

TEST_CASE("reconstruction is bitwise deterministic") {
  const ScalarFunctionSpec f = lookup("power", {{"p", 0.5}});
  const double a = reconstruct(*f.representation, 3.7);
  const double b = reconstruct(*f.representation, 3.7);
  CHECK(a == b);
}

TEST_CASE("monotone kernel values match the defining formula") {
  // One atom (lambda=2, weight=1.5) plus affine parts; no quadrature involved.
  IntegralRepresentation rep;
  rep.kind = KernelKind::monotone_kernel;
  rep.f0 = 0.25;
  rep.beta = 0.5;
  rep.atoms = {{2.0, 1.5}};
  const double t = 3.0;
  const double expected = 0.25 + 0.5 * t + 1.5 * (2.0 * t) / (2.0 + t);
  CHECK(reconstruct(rep, t) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("convex kernel values match the defining formula") {
  IntegralRepresentation rep;
  rep.kind = KernelKind::convex_kernel;
  rep.f0 = 1.0;
  rep.beta = 2.0;
  rep.gamma = 0.5;
  rep.atoms = {{1.0, 2.0}};
  const double t = 2.0;
  const double expected = 1.0 + 2.0 * t + 0.5 * t * t + 2.0 * (1.0 * t * t) / (1.0 + t);
  CHECK(reconstruct(rep, t) == doctest::Approx(expected).epsilon(1e-15));
}
