#include "omlab/monotonicity.hpp"

#include <cmath>
#include <random>

#include "omlab/errors.hpp"
#include "omlab/tolerances.hpp"

namespace omlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double merge_gap(double a, double b) {
  return tol::kMergeBase * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Log-uniform over [1e-3, 1e3] on unbounded intervals (power-law functions
// discriminate at widely separated scales), uniform otherwise.
double sample_point(const Interval& domain, std::mt19937_64& rng) {
  if (domain.unbounded_above()) {
    std::uniform_real_distribution<double> expo(-3.0, 3.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double t = std::pow(10.0, expo(rng));
      if (domain.contains(t)) return t;
    }
    throw GenerationError("could not sample a point inside the requested interval", 100, 0);
  }
  std::uniform_real_distribution<double> unif(domain.lo, domain.hi);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double t = unif(rng);
    if (domain.contains(t)) return t;
  }
  throw GenerationError("could not sample a point inside the requested interval", 100, 0);
}

std::vector<double> sample_point_set(const Interval& domain, int n, std::mt19937_64& rng) {
  std::vector<double> points;
  points.reserve(n);
  while (static_cast<int>(points.size()) < n) {
    double t = sample_point(domain, rng);
    // Keep k fixed: redraw (not merge) until the separation gap holds.
    bool ok = true;
    for (double kept : points)
      if (std::abs(t - kept) <= merge_gap(t, kept)) {
        ok = false;
        break;
      }
    if (ok) points.push_back(t);
  }
  return points;
}

nlohmann::json interval_to_json(const Interval& domain) {
  nlohmann::json j;
  j["lo"] = domain.lo;
  j["hi"] = domain.unbounded_above() ? nlohmann::json("inf") : nlohmann::json(domain.hi);
  j["closed_lo"] = domain.closed_lo;
  j["closed_hi"] = domain.closed_hi;
  return j;
}

}  // namespace

HermitianMatrix LoewnerMatrix::as_hermitian() const {
  const int k = order();
  ComplexMatrix m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m.at(i, j) = Complex(at(i, j), 0.0);
  return HermitianMatrix(std::move(m));
}

LoewnerMatrix loewner_matrix(const ScalarFunctionSpec& f, std::vector<double> points) {
  if (points.empty()) throw PreconditionError("loewner_matrix requires at least one point");
  for (double t : points)
    if (!f.domain.contains(t))
      throw DomainError("Loewner point " + std::to_string(t) + " lies outside the domain of '" +
                            f.display_name() + "'",
                        t);

  LoewnerMatrix L;
  // Points violating the separation gap are deduplicated (first representative
  // wins); the derivative diagonal covers the coincidence limit.
  for (double t : points) {
    bool duplicate = false;
    for (double kept : L.points)
      if (std::abs(t - kept) <= merge_gap(t, kept)) {
        duplicate = true;
        break;
      }
    if (duplicate)
      ++L.merged_points;
    else
      L.points.push_back(t);
  }

  const int k = L.order();
  L.entries.assign(static_cast<size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double value;
      if (i == j) {
        value = f.deriv(L.points[i]);
      } else {
        const double gap = std::abs(L.points[i] - L.points[j]);
        if (gap <= tol::kMidpointGap) {
          // Cancellation guard: first-order midpoint derivative.
          value = f.deriv(0.5 * (L.points[i] + L.points[j]));
        } else {
          value = (f.eval(L.points[i]) - f.eval(L.points[j])) / (L.points[i] - L.points[j]);
        }
      }
      L.entries[static_cast<size_t>(i) * k + j] = value;
      L.entries[static_cast<size_t>(j) * k + i] = value;
    }
  }
  return L;
}

PsdCertificate loewner_certificate(const ScalarFunctionSpec& f, std::vector<double> points,
                                   double tol) {
  const LoewnerMatrix L = loewner_matrix(f, std::move(points));
  PsdCertificate cert = psd_check(L.as_hermitian(), tol);
  if (L.merged_points > 0)
    cert.notes = "merged " + std::to_string(L.merged_points) +
                 " point(s) closer than the separation gap";
  return cert;
}

SuiteReport order_n_monotone(const ScalarFunctionSpec& f, int n, int trials, std::uint64_t seed,
                             Interval interval, double tol) {
  if (n < 1) throw PreconditionError("order_n_monotone requires n >= 1");
  if (trials < 1) throw PreconditionError("order_n_monotone requires trials >= 1");

  SuiteReport report;
  report.suite = "order-n-monotone";
  report.seed = seed;
  report.trials = trials;
  report.params["function"] = f.display_name();
  report.params["n"] = n;
  report.params["interval"] = interval_to_json(interval);
  report.tolerances["tol"] = tol;
  report.tolerances["tau_merge_base"] = tol::kMergeBase;

  std::mt19937_64 rng(seed);
  double min_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> points = sample_point_set(interval, n, rng);
    const PsdCertificate cert = loewner_certificate(f, points, tol);
    min_margin = std::min(min_margin, cert.min_eigenvalue);
    if (!cert.positive) {
      FailureRecord failure;
      failure.trial = trial;
      failure.label = f.display_name();
      failure.points = std::move(points);
      failure.min_eigenvalue = cert.min_eigenvalue;
      report.failures.push_back(std::move(failure));
    }
  }
  report.extra["min_margin"] = min_margin;
  // A clean pass is a finite-order certificate only, never a proof of full
  // operator monotonicity.
  report.extra["certifies"] = "order-" + std::to_string(n) + " monotonicity only";
  return report;
}

PsdCertificate midpoint_convexity_check(const ScalarFunctionSpec& f, const HermitianMatrix& A,
                                        const HermitianMatrix& B, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("midpoint_convexity_check: dimension mismatch");
  const HermitianMatrix mid = 0.5 * (A + B);
  const HermitianMatrix defect =
      0.5 * (apply_function(f, A) + apply_function(f, B)) - apply_function(f, mid);
  return psd_check(defect, tol);
}

PickReport pick_scan(const ScalarFunctionSpec& f, const PickGridSpec& grid) {
  if (!f.complex_eval)
    throw UnsupportedError("pick_scan: function '" + f.display_name() +
                           "' declares no analytic continuation");
  if (grid.moduli < 2 || grid.arguments < 1)
    throw PreconditionError("pick_scan requires at least 2 moduli and 1 argument");

  PickReport report;
  report.grid.reserve(static_cast<size_t>(grid.moduli) * grid.arguments);
  report.min_im = std::numeric_limits<double>::infinity();
  report.min_re = std::numeric_limits<double>::infinity();
  const double lg_lo = std::log10(grid.modulus_lo);
  const double lg_hi = std::log10(grid.modulus_hi);
  for (int i = 0; i < grid.moduli; ++i) {
    const double r = std::pow(10.0, lg_lo + (lg_hi - lg_lo) * i / (grid.moduli - 1));
    for (int j = 0; j < grid.arguments; ++j) {
      const double theta = kPi * (j + 0.5) / grid.arguments;
      const Complex z = std::polar(r, theta);
      const Complex value = f.complex_eval(z);
      report.grid.push_back({z, value});
      report.min_im = std::min(report.min_im, value.imag());
      report.min_re = std::min(report.min_re, value.real());
    }
  }
  report.is_pick_on_grid = report.min_im >= -tol::kPick;
  report.is_first_quadrant_on_grid = report.is_pick_on_grid && report.min_re >= -tol::kPick;
  return report;
}

SuiteReport composition_monotone_check(const ScalarFunctionSpec& f, const ScalarFunctionSpec& g,
                                       int n, int trials, std::uint64_t seed) {
  if (!f.has_tag(FunctionTag::operator_convex) || !f.has_tag(FunctionTag::fprime0_nonneg))
    throw PreconditionError(
        "composition_monotone_check: outer function must be operator convex with f'(0+) >= 0");
  if (!g.has_tag(FunctionTag::nonneg_operator_monotone))
    throw PreconditionError(
        "composition_monotone_check: inner function must be non-negative operator monotone");
  if (f.domain.lo > 0.0)
    throw PreconditionError(
        "composition_monotone_check: range of g is not contained in the domain of f");

  // Endpoint policy: the inner function's closure at 0 is avoided by testing
  // on (epsilon, .) with epsilon = 1e-6.
  Interval test_interval = g.domain;
  test_interval.lo = std::max(test_interval.lo, 1e-6);
  test_interval.closed_lo = false;

  SuiteReport report =
      order_n_monotone(compose(f, g), n, trials, seed, test_interval, 1e-9);
  report.suite = "composition-monotone";
  report.params["outer"] = f.display_name();
  report.params["inner"] = g.display_name();

  const PickReport pick = pick_scan(g);
  nlohmann::json pj;
  pj["min_im"] = pick.min_im;
  pj["min_re"] = pick.min_re;
  pj["is_pick_on_grid"] = pick.is_pick_on_grid;
  pj["is_first_quadrant_on_grid"] = pick.is_first_quadrant_on_grid;
  report.extra["inner_pick_scan"] = std::move(pj);
  return report;
}

}  // namespace omlab
