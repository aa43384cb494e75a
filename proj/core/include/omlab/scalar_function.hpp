#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omlab/integral_representation.hpp"

namespace omlab {

using Complex = std::complex<double>;

// Real interval with open/closed endpoint flags.
struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool closed_lo = true;
  bool closed_hi = false;

  static Interval nonneg() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), false, false}; }
  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }

  bool unbounded_above() const { return hi == std::numeric_limits<double>::infinity(); }
  bool contains(double t) const;
  // Membership with domain snapping: values within tol::kDomainSnap outside a
  // closed endpoint are clamped onto it; returns the (possibly clamped) value.
  std::optional<double> snap(double t) const;
};

enum class FunctionTag : unsigned {
  nonneg_operator_monotone = 1u << 0,
  operator_convex = 1u << 1,
  fprime0_nonneg = 1u << 2,
  nonneg = 1u << 3,
};

constexpr unsigned tag_bit(FunctionTag t) { return static_cast<unsigned>(t); }

// Catalog entry: scalar evaluation, derivative, principal-branch continuation,
// class tags, and an optional integral representation.
struct ScalarFunctionSpec {
  std::string id;  // base id, e.g. "power"
  Interval domain;
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  std::function<Complex(Complex)> complex_eval;  // empty when no continuation
  unsigned tags = 0;
  std::map<std::string, double> params;
  std::optional<IntegralRepresentation> representation;

  bool has_tag(FunctionTag t) const { return (tags & tag_bit(t)) != 0; }
  bool has_complex_eval() const { return static_cast<bool>(complex_eval); }
  // Display name with parameter assignments, e.g. "power:p=0.5".
  std::string display_name() const;
  double operator()(double t) const { return eval(t); }
};

// All base entries instantiated at their default parameters.
std::vector<ScalarFunctionSpec> catalog_list();

// Base ids accepted by lookup().
std::vector<std::string> catalog_ids();

// Instantiates a catalog entry; unknown id or out-of-range parameters throw
// ValidationError listing the valid ids.
ScalarFunctionSpec lookup(const std::string& id,
                          const std::map<std::string, double>& params = {});

// Parses "id" or "id:k=v[,k=v...]" selectors (CLI --function syntax).
ScalarFunctionSpec parse_selector(const std::string& selector);

// g(t) = t*f(t); operator convex with g'(0+) >= 0 when f is a non-negative
// operator monotone entry.
ScalarFunctionSpec times_t(const ScalarFunctionSpec& f);

// (f o g)(t) = f(g(t)); range of g must land in the domain of f.
ScalarFunctionSpec compose(const ScalarFunctionSpec& f, const ScalarFunctionSpec& g);

// Analytic continuation at Im z > 0; throws UnsupportedError without one.
Complex complex_sample(const ScalarFunctionSpec& f, Complex z);

// Catalog subsets used by the verification suites.
// Monotone: f_lambda over {0.1,1,10}, t^p over {0.25,0.5,0.75,1}, log(1+t), t/(1+t).
std::vector<ScalarFunctionSpec> monotone_subset();
// Convex: t^2, lambda t^2/(lambda+t) over {0.1,1,10}, t*f(t) for each monotone entry above.
std::vector<ScalarFunctionSpec> convex_subset();
// Every catalog entry carrying the requested tag (defaults as in catalog_list()).
std::vector<ScalarFunctionSpec> tagged_entries(FunctionTag tag);

}  // namespace omlab
