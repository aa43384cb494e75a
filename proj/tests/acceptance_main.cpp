// Acceptance gate: one check per release criterion, one PASS/FAIL line each.
// Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "omlab/inequalities.hpp"
#include "omlab/matrix_json.hpp"
#include "omlab/suites.hpp"
#include "test_helpers.hpp"

using namespace omlab;
using omlab::testing::herm;

namespace {

struct Check {
  std::string name;
  std::function<bool(std::string&)> run;
};

RunConfig config(const std::string& suite, int dim, int trials, std::uint64_t seed) {
  RunConfig cfg;
  cfg.suite = suite;
  cfg.dim = dim;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.tol = 1e-8;
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool criterion_counterexample_fixture(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const HermitianMatrix a = herm({{1, 0}, {0, 0}});
  const HermitianMatrix b = herm({{1, 1}, {1, 1}});
  const double lam = min_eigenvalue(symmetrized_product(a, b));
  const double target = 1.0 - std::sqrt(2.0);
  if (std::abs(lam - target) > 1e-10) {
    detail = "lambda_min(S) off target by " + std::to_string(std::abs(lam - target));
    return false;
  }
  std::vector<double> grid;
  for (int k = -5; k <= 25; ++k) grid.push_back(std::ldexp(1.0, k));
  const SuiteReport r = verify_subadditivity_converse(a, b, grid, 1e-8);
  const bool found = !r.extra.at("found_lambda").is_null() &&
                     r.extra.at("worst_defect").get<double>() < -1e-8;
  const double elapsed = seconds_since(start);
  detail = "lambda_min within " + std::to_string(std::abs(lam - target)) + ", violation at lambda=" +
           (found ? r.extra.at("found_lambda").dump() : std::string("none")) + ", " +
           std::to_string(elapsed) + "s";
  return found && elapsed < 1.0;
}

bool criterion_forward_battery(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  for (int dim : {2, 3, 4, 6}) {
    const SuiteReport r = run_suite(config("thm-subadd-fwd", dim, 500, 42));
    if (!r.passed()) {
      detail = "dim " + std::to_string(dim) + ": " + std::to_string(r.failures.size()) +
               " failure(s)";
      return false;
    }
  }
  const double elapsed = seconds_since(start);
  detail = "4 x 500 trials, zero failures, " + std::to_string(elapsed) + "s";
  return elapsed < 60.0;
}

bool criterion_equivalence_coupling(std::string& detail) {
  const SuiteReport r = run_suite(config("coupling", 3, 200, 42));
  const int agreements = r.extra.at("agreements").get<int>();
  detail = std::to_string(agreements) + "/200 sign agreements, " +
           std::to_string(r.extra.at("dead_band_skipped").get<int>()) + " dead-band skips";
  return r.passed() && agreements == 200;
}

bool criterion_gustafson(std::string& detail) {
  const SuiteReport random_pairs = run_suite(config("gustafson", 4, 1000, 42));
  if (!random_pairs.passed()) {
    detail = std::to_string(random_pairs.failures.size()) + " bound violations";
    return false;
  }
  // Degenerate windows m=M=n=N make the bound an equality: (1/2)S = m^2 I.
  const HermitianMatrix scalar = HermitianMatrix::diagonal({3.0, 3.0});
  const SuiteReport eq = verify_gustafson(scalar, scalar, {3.0, 3.0}, {3.0, 3.0}, 1e-8);
  const double margin = eq.extra.at("cases").at(0).at("margin").get<double>();
  detail = "1000 pairs clean; scalar equality margin " + std::to_string(margin);
  return eq.passed() && std::abs(margin) <= 1e-10;
}

bool criterion_hansen(std::string& detail) {
  // 625 trials = 500 in-hypothesis instances + 125 spread-ratio-5 explorations.
  const SuiteReport r = run_suite(config("hansen", 4, 625, 42));
  const size_t explorations = r.extra.at("exploration").size();
  detail = std::to_string(625 - explorations) + " in-hypothesis instances, " +
           std::to_string(explorations) + " exploration runs recorded";
  return r.passed() && explorations == 125;
}

bool criterion_square_order(std::string& detail) {
  const SuiteReport r = run_suite(config("square-order", 4, 500, 42));
  const int fwd = r.extra.at("forward_branches").get<int>();
  const int conv = r.extra.at("converse_branches").get<int>();
  detail = std::to_string(fwd) + " forward + " + std::to_string(conv) + " converse branches";
  return r.passed() && fwd == 500 && conv == 500;
}

bool criterion_loewner_and_composition(std::string& detail) {
  const SuiteReport loewner = run_suite(config("loewner", 4, 500, 42));
  if (!loewner.passed()) {
    detail = "loewner: " + std::to_string(loewner.failures.size()) + " failure(s)";
    return false;
  }
  int t2_first = -1;
  for (const auto& row : loewner.extra.at("non_monotone_confirmed"))
    if (row.at("function") == "t_squared")
      t2_first = row.at("trials_to_first_violation").get<int>();
  const SuiteReport comp = run_suite(config("composition", 4, 100, 42));
  const int matches = comp.extra.at("dichotomy").at("matches").get<int>();
  detail = "order-6 catalog clean; t^2 convicted at trial " + std::to_string(t2_first) +
           "; dichotomy " + std::to_string(matches) + "/6";
  return t2_first >= 1 && t2_first <= 200 && comp.passed() && matches == 6;
}

bool criterion_representations(std::string& detail) {
  const std::vector<ScalarFunctionSpec> fixtures = {
      lookup("f_lambda", {{"lambda", 1.0}}),
      lookup("power", {{"p", 0.5}}),
      lookup("power", {{"p", 0.3}}),
      lookup("log1p"),
  };
  double worst = 0.0;
  std::string worst_name;
  for (const auto& f : fixtures) {
    if (!f.representation.has_value()) {
      detail = f.display_name() + " lacks a representation";
      return false;
    }
    for (int i = 0; i < 50; ++i) {
      const double t = 0.1 + (10.0 - 0.1) * i / 49.0;
      const double exact = f.eval(t);
      const double rel = std::abs(reconstruct(*f.representation, t) - exact) / std::abs(exact);
      if (rel > worst) {
        worst = rel;
        worst_name = f.display_name();
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", worst);
  detail = "max relative error " + std::string(buf) + " (" + worst_name + ") vs 1e-6 budget";
  return worst <= 1e-6;
}

bool criterion_determinism(std::string& detail) {
  const std::string path = "acceptance_replay_report.json";
  const SuiteReport r = run_suite(config("all", 3, 10, 20240817));
  write_report(r, path, ReportFormat::json);
  const ReplayResult replayed = replay(path);
  std::remove(path.c_str());
  detail = replayed.matches ? "replayed `all` battery byte-identical (" +
                                  std::to_string(r.trials) + " trials)"
                            : "replay body diverged";
  return replayed.matches;
}

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"counterexample fixture and converse search", criterion_counterexample_fixture},
      {"forward subadditivity battery (dims 2,3,4,6)", criterion_forward_battery},
      {"equivalence coupling (sign of lambda_min(S))", criterion_equivalence_coupling},
      {"lower bound with scalar equality case", criterion_gustafson},
      {"isometry compression inside the spread window", criterion_hansen},
      {"square order, forward and converse branches", criterion_square_order},
      {"divided-difference certificates and composition dichotomy",
       criterion_loewner_and_composition},
      {"integral representation reconstruction", criterion_representations},
      {"byte-identical replay of the all battery", criterion_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = checks[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s  %zu/%zu %s  [%s]\n", ok ? "PASS" : "FAIL", i + 1, checks.size(),
                checks[i].name.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
