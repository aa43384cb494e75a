#include <cmath>
#include <complex>

#include <doctest.h>

#include "omlab/errors.hpp"
#include "omlab/scalar_function.hpp"

using namespace omlab;

TEST_CASE("lookup rejects unknown ids and out-of-range parameters") {
  CHECK_THROWS_AS(lookup("sinh"), ValidationError);
  CHECK_THROWS_AS(lookup("power", {{"p", 1.5}}), ValidationError);
  CHECK_THROWS_AS(lookup("power", {{"p", -0.1}}), ValidationError);
  CHECK_THROWS_AS(lookup("power2p", {{"p", 0.6}}), ValidationError);
  CHECK_THROWS_AS(lookup("f_lambda", {{"lambda", 0.0}}), ValidationError);
  CHECK_THROWS_AS(lookup("affine", {{"b", -1.0}}), ValidationError);
  try {
    lookup("sinh");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("f_lambda") != std::string::npos);
  }
}

TEST_CASE("f_lambda evaluates, differentiates, and continues analytically") {
  const ScalarFunctionSpec f = lookup("f_lambda", {{"lambda", 1.0}});
  CHECK(f(1.0) == doctest::Approx(0.5));
  CHECK(f.deriv(0.0) == doctest::Approx(1.0));
  CHECK(f.has_tag(FunctionTag::nonneg_operator_monotone));

  // i/(1+i) = (1+i)/2.
  const Complex v = complex_sample(f, Complex(0.0, 1.0));
  CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("power covers the full exponent range with the right limits") {
  const ScalarFunctionSpec half = lookup("power", {{"p", 0.5}});
  CHECK(half(4.0) == doctest::Approx(2.0));
  CHECK(half.deriv(4.0) == doctest::Approx(0.25));

  const ScalarFunctionSpec zero = lookup("power", {{"p", 0.0}});
  CHECK(zero(7.0) == doctest::Approx(1.0));
  CHECK(zero.deriv(7.0) == doctest::Approx(0.0));

  const ScalarFunctionSpec one = lookup("power", {{"p", 1.0}});
  CHECK(one(7.0) == doctest::Approx(7.0));

  // Principal branch: i^{1/2} = e^{i pi/4}.
  const Complex root_i = complex_sample(half, Complex(0.0, 1.0));
  CHECK(root_i.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(root_i.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("power2p is the doubled-exponent alias") {
  const ScalarFunctionSpec f = lookup("power2p", {{"p", 0.25}});
  CHECK(f(4.0) == doctest::Approx(2.0));  // t^{2p} = t^{0.5}
  CHECK(f.id == "power2p");
  CHECK(f.params.at("p") == doctest::Approx(0.25));
  CHECK(f.has_tag(FunctionTag::nonneg_operator_monotone));
}

TEST_CASE("log1p and its complex continuation") {
  const ScalarFunctionSpec f = lookup("log1p");
  CHECK(f(std::exp(1.0) - 1.0) == doctest::Approx(1.0));
  CHECK(f.deriv(1.0) == doctest::Approx(0.5));
  const Complex v = complex_sample(f, Complex(0.0, 1.0));
  CHECK(v.real() == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(std::atan(1.0)).epsilon(1e-14));  // pi/4
}

TEST_CASE("convex entries carry the convex tags and not the monotone one") {
  for (const char* id : {"t_squared", "convex_kernel", "t_power", "t_log1p"}) {
    const ScalarFunctionSpec f = lookup(id);
    CHECK(f.has_tag(FunctionTag::operator_convex));
    CHECK(f.has_tag(FunctionTag::fprime0_nonneg));
    CHECK_FALSE(f.has_tag(FunctionTag::nonneg_operator_monotone));
  }
  const ScalarFunctionSpec cubed = lookup("t_cubed");
  CHECK_FALSE(cubed.has_tag(FunctionTag::operator_convex));
  CHECK_FALSE(cubed.has_tag(FunctionTag::nonneg_operator_monotone));
  CHECK(cubed.has_tag(FunctionTag::nonneg));
}

TEST_CASE("convex_kernel and t_power evaluate to their closed forms") {
  const ScalarFunctionSpec k = lookup("convex_kernel", {{"lambda", 1.0}});
  CHECK(k(1.0) == doctest::Approx(0.5));
  CHECK(k.deriv(1.0) == doctest::Approx(0.75));

  const ScalarFunctionSpec tp = lookup("t_power", {{"p", 0.5}});
  CHECK(tp(4.0) == doctest::Approx(8.0));  // t^{1.5}
}

TEST_CASE("affine evaluates and continues") {
  const ScalarFunctionSpec f = lookup("affine", {{"c", 2.0}, {"b", 3.0}});
  CHECK(f(5.0) == doctest::Approx(17.0));
  const Complex v = complex_sample(f, Complex(1.0, 1.0));
  CHECK(v.real() == doctest::Approx(5.0));
  CHECK(v.imag() == doctest::Approx(3.0));
  CHECK(f.display_name() == "affine:b=3;c=2");
}

TEST_CASE("selector parsing round-trips ids and parameters") {
  const ScalarFunctionSpec f = parse_selector("power:p=0.3");
  CHECK(f.id == "power");
  CHECK(f.params.at("p") == doctest::Approx(0.3));
  CHECK(parse_selector("log1p").id == "log1p");
  CHECK(parse_selector("f_lambda:lambda=2.5").params.at("lambda") == doctest::Approx(2.5));

  CHECK_THROWS_AS(parse_selector("power:p"), ValidationError);
  CHECK_THROWS_AS(parse_selector("power:p=abc"), ValidationError);
  CHECK_THROWS_AS(parse_selector(""), ValidationError);
  CHECK_THROWS_AS(parse_selector("nope:here=1"), ValidationError);
}

TEST_CASE("times_t lifts monotone entries to convex ones") {
  const ScalarFunctionSpec g = times_t(lookup("power", {{"p", 0.5}}));
  CHECK(g(4.0) == doctest::Approx(8.0));
  CHECK(g.deriv(4.0) == doctest::Approx(3.0));  // f + t f' = 2 + 4*0.25
  CHECK(g.has_tag(FunctionTag::operator_convex));
  CHECK(g.has_tag(FunctionTag::fprime0_nonneg));
  REQUIRE(g.representation.has_value());
  CHECK(g.representation->kind == KernelKind::convex_kernel);
}

TEST_CASE("compose chains values and derivatives") {
  const ScalarFunctionSpec h = compose(lookup("t_squared"), lookup("power", {{"p", 0.5}}));
  CHECK(h(3.0) == doctest::Approx(3.0));
  CHECK(h.deriv(3.0) == doctest::Approx(1.0));
  const Complex v = complex_sample(h, Complex(0.0, 1.0));  // (i^{1/2})^2 = i
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("complex_sample guards the upper half-plane and missing continuations") {
  const ScalarFunctionSpec f = lookup("f_lambda");
  CHECK_THROWS_AS(complex_sample(f, Complex(1.0, -1.0)), PreconditionError);
  ScalarFunctionSpec bare;
  bare.id = "bare";
  bare.eval = [](double t) { return t; };
  CHECK_THROWS_AS(complex_sample(bare, Complex(0.0, 1.0)), UnsupportedError);
}

TEST_CASE("catalog subsets carry the advertised sizes and tags") {
  const auto mono = monotone_subset();
  CHECK(mono.size() == 9);
  for (const auto& f : mono) {
    CHECK(f.has_tag(FunctionTag::nonneg_operator_monotone));
    CHECK(f.has_tag(FunctionTag::nonneg));
  }
  const auto conv = convex_subset();
  CHECK(conv.size() == 13);
  for (const auto& f : conv) {
    CHECK(f.has_tag(FunctionTag::operator_convex));
    CHECK(f.has_tag(FunctionTag::fprime0_nonneg));
  }
  for (const auto& f : tagged_entries(FunctionTag::nonneg_operator_monotone))
    CHECK(f.has_tag(FunctionTag::nonneg_operator_monotone));
}

TEST_CASE("display names include parameters with a CSV-safe separator") {
  CHECK(lookup("power", {{"p", 0.5}}).display_name() == "power:p=0.5");
  CHECK(lookup("log1p").display_name() == "log1p");
  const std::string name = lookup("f_lambda", {{"lambda", 10.0}}).display_name();
  CHECK(name == "f_lambda:lambda=10");
  CHECK(name.find(',') == std::string::npos);
}
