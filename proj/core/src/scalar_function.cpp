#include "omlab/scalar_function.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "omlab/errors.hpp"
#include "omlab/tolerances.hpp"

namespace omlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr unsigned kMonotoneTags =
    tag_bit(FunctionTag::nonneg_operator_monotone) | tag_bit(FunctionTag::nonneg);
constexpr unsigned kConvexTags = tag_bit(FunctionTag::operator_convex) |
                                 tag_bit(FunctionTag::fprime0_nonneg) |
                                 tag_bit(FunctionTag::nonneg);
constexpr unsigned kAffineTags = kMonotoneTags | kConvexTags;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// Representing density of t^q on (0,inf) against the kernel lambda*t/(lambda+t):
// rho(lambda) = sin(q*pi)/pi * lambda^(q-2). Validated numerically against the
// closed form before being frozen here (see test_representation).
IntegralRepresentation power_density_rep(double q, KernelKind kind) {
  IntegralRepresentation rep;
  rep.kind = kind;
  const double coeff = std::sin(q * kPi) / kPi;
  rep.density = [coeff, q](double lambda) { return coeff * std::pow(lambda, q - 2.0); };
  rep.support_lo = 0.0;
  rep.decay_exponent = 2.0 - q;
  return rep;
}

ScalarFunctionSpec make_f_lambda(double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("f_lambda requires lambda > 0");
  ScalarFunctionSpec f;
  f.id = "f_lambda";
  f.params = {{"lambda", lambda}};
  f.domain = Interval::nonneg();
  f.eval = [lambda](double t) { return lambda * t / (lambda + t); };
  f.deriv = [lambda](double t) { return lambda * lambda / ((lambda + t) * (lambda + t)); };
  f.complex_eval = [lambda](Complex z) { return lambda * z / (lambda + z); };
  f.tags = kMonotoneTags;
  IntegralRepresentation rep;
  rep.kind = KernelKind::monotone_kernel;
  rep.atoms = {{lambda, 1.0}};
  f.representation = rep;
  return f;
}

ScalarFunctionSpec make_power(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("power requires p in [0, 1]");
  ScalarFunctionSpec f;
  f.id = "power";
  f.params = {{"p", p}};
  f.domain = Interval::nonneg();
  if (p == 0.0) {
    // t^0 treated as the constant 1.
    f.eval = [](double) { return 1.0; };
    f.deriv = [](double) { return 0.0; };
    f.complex_eval = [](Complex) { return Complex(1.0, 0.0); };
    f.tags = kAffineTags;
    IntegralRepresentation rep;
    rep.f0 = 1.0;
    f.representation = rep;
  } else if (p == 1.0) {
    f.eval = [](double t) { return t; };
    f.deriv = [](double) { return 1.0; };
    f.complex_eval = [](Complex z) { return z; };
    f.tags = kAffineTags;
    IntegralRepresentation rep;
    rep.beta = 1.0;
    f.representation = rep;
  } else {
    f.eval = [p](double t) { return std::pow(t, p); };
    f.deriv = [p](double t) { return p * std::pow(t, p - 1.0); };
    f.complex_eval = [p](Complex z) { return std::pow(z, p); };
    f.tags = kMonotoneTags;
    // Tail lambda^(p-2) thins out as p -> 1; beyond 0.9 the truncated
    // quadrature can no longer certify 1e-6, so no representation is declared.
    if (p <= 0.9) f.representation = power_density_rep(p, KernelKind::monotone_kernel);
  }
  return f;
}

ScalarFunctionSpec make_power2p(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw ValidationError("power2p requires p in [0, 1/2]");
  ScalarFunctionSpec f = make_power(2.0 * p);
  f.id = "power2p";
  f.params = {{"p", p}};
  return f;
}

ScalarFunctionSpec make_log1p() {
  ScalarFunctionSpec f;
  f.id = "log1p";
  f.domain = Interval::nonneg();
  f.eval = [](double t) { return std::log1p(t); };
  f.deriv = [](double t) { return 1.0 / (1.0 + t); };
  f.complex_eval = [](Complex z) { return std::log(Complex(1.0, 0.0) + z); };
  f.tags = kMonotoneTags;
  // log(1+t) = \int_1^inf [lambda t/(lambda+t)] lambda^{-2} dlambda (partial fractions).
  IntegralRepresentation rep;
  rep.kind = KernelKind::monotone_kernel;
  rep.density = [](double lambda) { return 1.0 / (lambda * lambda); };
  rep.support_lo = 1.0;
  rep.decay_exponent = 2.0;
  f.representation = rep;
  return f;
}

ScalarFunctionSpec make_t_squared() {
  ScalarFunctionSpec f;
  f.id = "t_squared";
  f.domain = Interval::nonneg();
  f.eval = [](double t) { return t * t; };
  f.deriv = [](double t) { return 2.0 * t; };
  f.complex_eval = [](Complex z) { return z * z; };
  f.tags = kConvexTags;
  IntegralRepresentation rep;
  rep.kind = KernelKind::convex_kernel;
  rep.gamma = 1.0;
  f.representation = rep;
  return f;
}

ScalarFunctionSpec make_t_cubed() {
  ScalarFunctionSpec f;
  f.id = "t_cubed";
  f.domain = Interval::nonneg();
  f.eval = [](double t) { return t * t * t; };
  f.deriv = [](double t) { return 3.0 * t * t; };
  f.complex_eval = [](Complex z) { return z * z * z; };
  f.tags = tag_bit(FunctionTag::nonneg);  // neither operator monotone nor operator convex
  return f;
}

ScalarFunctionSpec make_convex_kernel(double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("convex_kernel requires lambda > 0");
  ScalarFunctionSpec f;
  f.id = "convex_kernel";
  f.params = {{"lambda", lambda}};
  f.domain = Interval::nonneg();
  f.eval = [lambda](double t) { return lambda * t * t / (lambda + t); };
  f.deriv = [lambda](double t) {
    const double d = lambda + t;
    return lambda * (t * t + 2.0 * lambda * t) / (d * d);
  };
  f.complex_eval = [lambda](Complex z) { return lambda * z * z / (lambda + z); };
  f.tags = kConvexTags;
  IntegralRepresentation rep;
  rep.kind = KernelKind::convex_kernel;
  rep.atoms = {{lambda, 1.0}};
  f.representation = rep;
  return f;
}

ScalarFunctionSpec make_t_power(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("t_power requires p in [0, 1]");
  ScalarFunctionSpec f;
  f.id = "t_power";
  f.params = {{"p", p}};
  f.domain = Interval::nonneg();
  const double q = 1.0 + p;
  f.eval = [q](double t) { return std::pow(t, q); };
  f.deriv = [q](double t) { return q * std::pow(t, q - 1.0); };
  f.complex_eval = [q](Complex z) { return std::pow(z, q); };
  f.tags = kConvexTags;
  IntegralRepresentation rep;
  if (p == 0.0) {
    rep.kind = KernelKind::convex_kernel;
    rep.beta = 1.0;
    f.representation = rep;
  } else if (p == 1.0) {
    rep.kind = KernelKind::convex_kernel;
    rep.gamma = 1.0;
    f.representation = rep;
  } else if (p <= 0.9) {
    // t^(1+p) = t * t^p shares the power density under the convex kernel.
    f.representation = power_density_rep(p, KernelKind::convex_kernel);
  }
  return f;
}

ScalarFunctionSpec make_t_log1p() {
  ScalarFunctionSpec f;
  f.id = "t_log1p";
  f.domain = Interval::nonneg();
  f.eval = [](double t) { return t * std::log1p(t); };
  f.deriv = [](double t) { return std::log1p(t) + t / (1.0 + t); };
  f.complex_eval = [](Complex z) { return z * std::log(Complex(1.0, 0.0) + z); };
  f.tags = kConvexTags;
  IntegralRepresentation rep;
  rep.kind = KernelKind::convex_kernel;
  rep.density = [](double lambda) { return 1.0 / (lambda * lambda); };
  rep.support_lo = 1.0;
  rep.decay_exponent = 2.0;
  f.representation = rep;
  return f;
}

ScalarFunctionSpec make_affine(double c, double b) {
  if (!(c >= 0.0 && b >= 0.0)) throw ValidationError("affine requires c >= 0 and b >= 0");
  ScalarFunctionSpec f;
  f.id = "affine";
  f.params = {{"b", b}, {"c", c}};
  f.domain = Interval::nonneg();
  f.eval = [c, b](double t) { return c + b * t; };
  f.deriv = [b](double) { return b; };
  f.complex_eval = [c, b](Complex z) { return c + b * z; };
  f.tags = kAffineTags;
  IntegralRepresentation rep;
  rep.f0 = c;
  rep.beta = b;
  f.representation = rep;
  return f;
}

ScalarFunctionSpec make_constant(double c) {
  if (!(c >= 0.0)) throw ValidationError("constant requires c >= 0");
  ScalarFunctionSpec f;
  f.id = "constant";
  f.params = {{"c", c}};
  f.domain = Interval::nonneg();
  f.eval = [c](double) { return c; };
  f.deriv = [](double) { return 0.0; };
  f.complex_eval = [c](Complex) { return Complex(c, 0.0); };
  f.tags = kAffineTags;
  IntegralRepresentation rep;
  rep.f0 = c;
  f.representation = rep;
  return f;
}

}  // namespace

bool Interval::contains(double t) const {
  if (t < lo || (t == lo && !closed_lo)) return false;
  if (t > hi || (t == hi && !closed_hi)) return false;
  return true;
}

std::optional<double> Interval::snap(double t) const {
  if (contains(t)) return t;
  if (closed_lo && t < lo && lo - t <= tol::kDomainSnap) return lo;
  if (closed_hi && t > hi && t - hi <= tol::kDomainSnap) return hi;
  return std::nullopt;
}

std::string ScalarFunctionSpec::display_name() const {
  if (params.empty()) return id;
  std::ostringstream out;
  out << id << ':';
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) out << ';';
    first = false;
    out << key << '=' << format_double(value);
  }
  return out.str();
}

std::vector<std::string> catalog_ids() {
  return {"f_lambda", "power",   "power2p", "log1p",  "t_squared", "t_cubed",
          "convex_kernel", "t_power", "t_log1p", "affine", "constant"};
}

ScalarFunctionSpec lookup(const std::string& id, const std::map<std::string, double>& params) {
  if (id == "f_lambda") return make_f_lambda(require_param(params, "lambda", 1.0));
  if (id == "power") return make_power(require_param(params, "p", 0.5));
  if (id == "power2p") return make_power2p(require_param(params, "p", 0.25));
  if (id == "log1p") return make_log1p();
  if (id == "t_squared") return make_t_squared();
  if (id == "t_cubed") return make_t_cubed();
  if (id == "convex_kernel") return make_convex_kernel(require_param(params, "lambda", 1.0));
  if (id == "t_power") return make_t_power(require_param(params, "p", 0.5));
  if (id == "t_log1p") return make_t_log1p();
  if (id == "affine")
    return make_affine(require_param(params, "c", 0.0), require_param(params, "b", 1.0));
  if (id == "constant") return make_constant(require_param(params, "c", 1.0));
  std::ostringstream msg;
  msg << "unknown function id '" << id << "'; valid ids:";
  for (const auto& known : catalog_ids()) msg << ' ' << known;
  throw ValidationError(msg.str());
}

std::vector<ScalarFunctionSpec> catalog_list() {
  std::vector<ScalarFunctionSpec> out;
  for (const auto& id : catalog_ids()) out.push_back(lookup(id));
  return out;
}

ScalarFunctionSpec parse_selector(const std::string& selector) {
  const auto colon = selector.find(':');
  const std::string id = selector.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::string rest = selector.substr(colon + 1);
    std::istringstream stream(rest);
    std::string item;
    while (std::getline(stream, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ValidationError("malformed function selector '" + selector +
                              "'; expected id or id:key=value[,key=value...]");
      try {
        size_t used = 0;
        const double value = std::stod(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw std::invalid_argument(item);
        params[item.substr(0, eq)] = value;
      } catch (const std::exception&) {
        throw ValidationError("malformed numeric value in function selector '" + selector + "'");
      }
    }
    if (params.empty())
      throw ValidationError("malformed function selector '" + selector + "'");
  }
  return lookup(id, params);
}

ScalarFunctionSpec times_t(const ScalarFunctionSpec& f) {
  ScalarFunctionSpec g;
  g.id = "t_times(" + f.display_name() + ")";
  g.domain = f.domain;
  auto feval = f.eval;
  auto fderiv = f.deriv;
  g.eval = [feval](double t) { return t * feval(t); };
  g.deriv = [feval, fderiv](double t) { return feval(t) + t * fderiv(t); };
  if (f.complex_eval) {
    auto fc = f.complex_eval;
    g.complex_eval = [fc](Complex z) { return z * fc(z); };
  }
  if (f.has_tag(FunctionTag::nonneg_operator_monotone)) g.tags = kConvexTags;
  else if (f.has_tag(FunctionTag::nonneg)) g.tags = tag_bit(FunctionTag::nonneg);
  if (f.representation && f.representation->kind == KernelKind::monotone_kernel) {
    // t*(f0 + beta t + int k dmu) = f0 t + beta t^2 + int [lambda t^2/(lambda+t)] dmu.
    IntegralRepresentation rep = *f.representation;
    rep.kind = KernelKind::convex_kernel;
    rep.f0 = 0.0;
    rep.beta = f.representation->f0;
    rep.gamma = f.representation->beta;
    g.representation = rep;
  }
  return g;
}

ScalarFunctionSpec compose(const ScalarFunctionSpec& f, const ScalarFunctionSpec& g) {
  ScalarFunctionSpec h;
  h.id = "compose(" + f.display_name() + "|" + g.display_name() + ")";
  h.domain = g.domain;
  auto feval = f.eval;
  auto fderiv = f.deriv;
  auto geval = g.eval;
  auto gderiv = g.deriv;
  h.eval = [feval, geval](double t) { return feval(geval(t)); };
  h.deriv = [fderiv, geval, gderiv](double t) { return fderiv(geval(t)) * gderiv(t); };
  if (f.complex_eval && g.complex_eval) {
    auto fc = f.complex_eval;
    auto gc = g.complex_eval;
    h.complex_eval = [fc, gc](Complex z) { return fc(gc(z)); };
  }
  if (f.has_tag(FunctionTag::nonneg)) h.tags = tag_bit(FunctionTag::nonneg);
  return h;
}

Complex complex_sample(const ScalarFunctionSpec& f, Complex z) {
  if (!(z.imag() > 0.0))
    throw PreconditionError("complex_sample requires Im z > 0 (got Im z = " +
                            std::to_string(z.imag()) + ")");
  if (!f.complex_eval)
    throw UnsupportedError("function '" + f.display_name() +
                           "' declares no analytic continuation");
  return f.complex_eval(z);
}

std::vector<ScalarFunctionSpec> monotone_subset() {
  std::vector<ScalarFunctionSpec> fs;
  for (double lambda : {0.1, 1.0, 10.0}) fs.push_back(make_f_lambda(lambda));
  for (double p : {0.25, 0.5, 0.75, 1.0}) fs.push_back(make_power(p));
  fs.push_back(make_log1p());
  fs.push_back(make_f_lambda(1.0));  // t/(1+t), listed separately in the suite contract
  return fs;
}

std::vector<ScalarFunctionSpec> convex_subset() {
  std::vector<ScalarFunctionSpec> fs;
  fs.push_back(make_t_squared());
  for (double lambda : {0.1, 1.0, 10.0}) fs.push_back(make_convex_kernel(lambda));
  for (const auto& f : monotone_subset()) fs.push_back(times_t(f));
  return fs;
}

std::vector<ScalarFunctionSpec> tagged_entries(FunctionTag tag) {
  std::vector<ScalarFunctionSpec> out;
  for (auto& f : catalog_list())
    if (f.has_tag(tag)) out.push_back(std::move(f));
  return out;
}

}  // namespace omlab
