#include "omlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include "omlab/errors.hpp"
#include "omlab/inequalities.hpp"
#include "omlab/matrix_json.hpp"
#include "omlab/monotonicity.hpp"
#include "omlab/sampler.hpp"

namespace omlab {

namespace {

using InputPair = std::optional<std::pair<HermitianMatrix, HermitianMatrix>>;

constexpr double kHansenHi = 3.8284271247461903;  // 1 + 2*sqrt(2)

const std::vector<std::string>& registry() {
  static const std::vector<std::string> names = {
      "thm-subadd-fwd", "thm-subadd-conv", "gustafson",      "window-subadd",
      "power-split",    "hansen",          "square-order",   "power-monotone",
      "tf-corollary",   "loewner",         "composition",    "coupling",
      "all",
  };
  return names;
}

std::string joined_names() {
  std::string out;
  for (const auto& n : registry()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

SuiteReport base_report(const RunConfig& cfg, const InputPair& input) {
  SuiteReport r;
  r.suite = cfg.suite;
  r.seed = cfg.seed;
  r.tolerances["tol"] = cfg.tol;
  r.params["config"] = {{"dim", cfg.dim},
                        {"trials", cfg.trials},
                        {"functions", cfg.function_selectors}};
  if (input)
    r.params["input"] = {{"A", matrix_to_json(input->first)},
                         {"B", matrix_to_json(input->second)}};
  r.extra["cases"] = nlohmann::json::array();
  return r;
}

// Folds a per-instance verifier report into the suite-level one, re-stamping
// the trial index.
void merge_instance(SuiteReport& out, const SuiteReport& sub, int trial) {
  for (FailureRecord f : sub.failures) {
    f.trial = trial;
    out.failures.push_back(std::move(f));
  }
  if (sub.extra.contains("cases"))
    for (auto c : sub.extra.at("cases")) {
      c["trial"] = trial;
      out.extra["cases"].push_back(std::move(c));
    }
}

void reject_input(const RunConfig& cfg, const InputPair& input) {
  if (!cfg.input_path.empty() || input)
    throw UsageError("suite '" + cfg.suite + "' does not accept --input");
}

// Splits --function selectors into an exponent override (a "power:p=" entry)
// and the remaining explicit function choices.
struct SelectorSplit {
  double p;
  std::vector<ScalarFunctionSpec> fs;
};

SelectorSplit split_selectors(const RunConfig& cfg, double default_p) {
  SelectorSplit out;
  out.p = default_p;
  bool p_taken = false;
  for (const auto& sel : cfg.function_selectors) {
    ScalarFunctionSpec f = parse_selector(sel);
    if (!p_taken && f.id == "power" && f.params.count("p")) {
      out.p = f.params.at("p");
      p_taken = true;
      continue;
    }
    out.fs.push_back(std::move(f));
  }
  return out;
}

std::vector<ScalarFunctionSpec> resolve_functions(const RunConfig& cfg, bool convex) {
  if (cfg.function_selectors.empty()) return convex ? convex_subset() : monotone_subset();
  std::vector<ScalarFunctionSpec> out;
  out.reserve(cfg.function_selectors.size());
  for (const auto& sel : cfg.function_selectors) out.push_back(parse_selector(sel));
  return out;
}

void require_monotone(const std::vector<ScalarFunctionSpec>& fs, const std::string& suite) {
  for (const auto& f : fs)
    if (!f.has_tag(FunctionTag::nonneg_operator_monotone) || !f.has_tag(FunctionTag::nonneg))
      throw UsageError("function " + f.display_name() +
                       " is not a non-negative operator monotone entry (required by suite '" +
                       suite + "')");
}

void require_convex(const std::vector<ScalarFunctionSpec>& fs, const std::string& suite) {
  for (const auto& f : fs)
    if (!f.has_tag(FunctionTag::operator_convex) || !f.has_tag(FunctionTag::fprime0_nonneg))
      throw UsageError("function " + f.display_name() +
                       " is not operator convex with f'(0+) >= 0 (required by suite '" + suite +
                       "')");
}

HermitianMatrix hermitian_square(const HermitianMatrix& a) {
  return 0.5 * symmetrized_product(a, a);
}

// ---------------------------------------------------------------------------
// Suite drivers
// ---------------------------------------------------------------------------

SuiteReport run_subadd_fwd(const RunConfig& cfg, const InputPair& input) {
  std::vector<ScalarFunctionSpec> fs = resolve_functions(cfg, /*convex=*/false);
  require_monotone(fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  if (input) {
    merge_instance(r, verify_subadditivity_forward(input->first, input->second, fs, cfg.tol), 0);
    r.trials = 1;
    return r;
  }
  int fallback_pairs = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    InstanceSpec spec;
    spec.dim = cfg.dim;
    spec.kind = InstanceKind::jordan_positive_pair;
    spec.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t));
    const Instance inst = generate(spec);
    if (inst.fallback_used) ++fallback_pairs;
    merge_instance(r, verify_subadditivity_forward(inst.matrices[0], inst.matrices[1], fs, cfg.tol),
                   t);
  }
  r.trials = cfg.trials;
  r.extra["fallback_pairs"] = fallback_pairs;
  return r;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = -5; k <= 25; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

SuiteReport run_subadd_conv(const RunConfig& cfg, const InputPair& input) {
  const std::vector<double> grid = default_lambda_grid();
  SuiteReport r = base_report(cfg, input);
  r.params["lambda_grid"] = {{"base", 2.0}, {"k_lo", -5}, {"k_hi", 25}};
  if (input) {
    merge_instance(r, verify_subadditivity_converse(input->first, input->second, grid, cfg.tol), 0);
    r.trials = 1;
    return r;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    InstanceSpec spec;
    spec.dim = cfg.dim;
    spec.kind = InstanceKind::jordan_indefinite_pair;
    spec.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t));
    const Instance inst = generate(spec);
    merge_instance(r, verify_subadditivity_converse(inst.matrices[0], inst.matrices[1], grid, cfg.tol),
                   t);
  }
  r.trials = cfg.trials;
  return r;
}

SpectralWindow window_from_spectrum(const HermitianMatrix& a) {
  const Spectrum s = eigh(a);
  return {s.eigenvalues.front(), s.eigenvalues.back()};
}

SuiteReport run_gustafson(const RunConfig& cfg, const InputPair& input) {
  SuiteReport r = base_report(cfg, input);
  if (input) {
    const SpectralWindow wa = window_from_spectrum(input->first);
    const SpectralWindow wb = window_from_spectrum(input->second);
    merge_instance(r, verify_gustafson(input->first, input->second, wa, wb, cfg.tol), 0);
    r.trials = 1;
    return r;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t base = static_cast<std::uint64_t>(t) * 3;
    std::mt19937_64 rng(derive_subseed(cfg.seed, base));
    std::uniform_real_distribution<double> log_lo(-1.3, 0.3);
    std::uniform_real_distribution<double> stretch(0.0, 6.0);
    const double m = std::pow(10.0, log_lo(rng));
    const double bigm = m * (1.0 + stretch(rng));
    const double n = std::pow(10.0, log_lo(rng));
    const double bign = n * (1.0 + stretch(rng));

    InstanceSpec sa;
    sa.dim = cfg.dim;
    sa.kind = InstanceKind::psd_window;
    sa.seed = derive_subseed(cfg.seed, base + 1);
    sa.window_lo = m;
    sa.window_hi = bigm;
    InstanceSpec sb = sa;
    sb.seed = derive_subseed(cfg.seed, base + 2);
    sb.window_lo = n;
    sb.window_hi = bign;
    const Instance ia = generate(sa);
    const Instance ib = generate(sb);
    merge_instance(r,
                   verify_gustafson(ia.matrices[0], ib.matrices[0], {m, bigm}, {n, bign}, cfg.tol),
                   t);
  }
  r.trials = cfg.trials;
  return r;
}

SuiteReport run_window_subadd(const RunConfig& cfg, const InputPair& input) {
  std::vector<ScalarFunctionSpec> fs = resolve_functions(cfg, /*convex=*/false);
  require_monotone(fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  if (input) {
    const SpectralWindow wa = window_from_spectrum(input->first);
    const SpectralWindow wb = window_from_spectrum(input->second);
    merge_instance(r, verify_window_subadditivity(input->first, input->second, wa, wb, fs, cfg.tol),
                   0);
    r.trials = 1;
    return r;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t base = static_cast<std::uint64_t>(t) * 3;
    std::mt19937_64 rng(derive_subseed(cfg.seed, base));
    std::uniform_real_distribution<double> log_lo(-0.5, 0.5);
    // Spread ratios capped at 1 + 2*sqrt(2) so (M-m)(N-n) <= 8mn always holds.
    std::uniform_real_distribution<double> ratio(1.0, kHansenHi);
    const double m = std::pow(10.0, log_lo(rng));
    const double bigm = m * ratio(rng);
    const double n = std::pow(10.0, log_lo(rng));
    const double bign = n * ratio(rng);

    InstanceSpec sa;
    sa.dim = cfg.dim;
    sa.kind = InstanceKind::psd_window;
    sa.seed = derive_subseed(cfg.seed, base + 1);
    sa.window_lo = m;
    sa.window_hi = bigm;
    InstanceSpec sb = sa;
    sb.seed = derive_subseed(cfg.seed, base + 2);
    sb.window_lo = n;
    sb.window_hi = bign;
    const Instance ia = generate(sa);
    const Instance ib = generate(sb);
    merge_instance(
        r,
        verify_window_subadditivity(ia.matrices[0], ib.matrices[0], {m, bigm}, {n, bign}, fs,
                                    cfg.tol),
        t);
  }
  r.trials = cfg.trials;
  return r;
}

SuiteReport run_power_split(const RunConfig& cfg, const InputPair& input) {
  SelectorSplit sel = split_selectors(cfg, 0.4);
  if (sel.fs.empty()) sel.fs = monotone_subset();
  require_monotone(sel.fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  r.params["p"] = sel.p;
  if (input) {
    merge_instance(r, verify_power_split(input->first, input->second, sel.p, sel.fs, cfg.tol), 0);
    r.trials = 1;
    return r;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    InstanceSpec spec;
    spec.dim = cfg.dim;
    spec.kind = InstanceKind::ordered_pair_leq;
    spec.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t));
    const Instance inst = generate(spec);
    merge_instance(
        r, verify_power_split(inst.matrices[0], inst.matrices[1], sel.p, sel.fs, cfg.tol), t);
  }
  r.trials = cfg.trials;
  return r;
}

SuiteReport run_hansen(const RunConfig& cfg, const InputPair& input) {
  reject_input(cfg, input);
  std::vector<ScalarFunctionSpec> fs = resolve_functions(cfg, /*convex=*/false);
  require_monotone(fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  r.extra["exploration"] = nlohmann::json::array();
  const SpectralWindow in_window{1.0, kHansenHi};
  const SpectralWindow wide_window{1.0, 5.0};
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t sa = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t) * 2);
    const std::uint64_t sc = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t) * 2 + 1);
    SuiteReport sub;
    if (t % 5 == 4) {
      // Out-of-hypothesis exploration at spread ratio 5.
      InstanceSpec a_spec;
      a_spec.dim = 4;
      a_spec.kind = InstanceKind::psd_window;
      a_spec.seed = sa;
      a_spec.window_lo = wide_window.lo;
      a_spec.window_hi = wide_window.hi;
      InstanceSpec c_spec;
      c_spec.dim = 2;
      c_spec.rows = 4;
      c_spec.kind = InstanceKind::isometry;
      c_spec.seed = sc;
      const Instance a = generate(a_spec);
      const Instance c = generate(c_spec);
      sub = verify_hansen_type({a.matrices[0]}, {c.blocks}, wide_window, fs, cfg.tol);
    } else if (t % 4 == 0 || t % 4 == 2) {
      // Single-isometry form; alternates 4->2 and 6->3 compressions.
      const int rows = (t % 4 == 0) ? 4 : 6;
      const int cols = rows / 2;
      InstanceSpec a_spec;
      a_spec.dim = rows;
      a_spec.kind = InstanceKind::psd_window;
      a_spec.seed = sa;
      a_spec.window_lo = in_window.lo;
      a_spec.window_hi = in_window.hi;
      InstanceSpec c_spec;
      c_spec.dim = cols;
      c_spec.rows = rows;
      c_spec.kind = InstanceKind::isometry;
      c_spec.seed = sc;
      const Instance a = generate(a_spec);
      const Instance c = generate(c_spec);
      sub = verify_hansen_type({a.matrices[0]}, {c.blocks}, in_window, fs, cfg.tol);
    } else {
      // Resolution-of-identity form; odd pairs share one A to exercise the
      // literal common-matrix reading.
      const bool shared_a = (t % 4 == 3);
      InstanceSpec f_spec;
      f_spec.dim = 3;
      f_spec.count = 2;
      f_spec.kind = InstanceKind::resolution_of_identity;
      f_spec.seed = sc;
      const Instance fam = generate(f_spec);
      std::vector<HermitianMatrix> as;
      for (int i = 0; i < (shared_a ? 1 : 2); ++i) {
        InstanceSpec a_spec;
        a_spec.dim = 3;
        a_spec.kind = InstanceKind::psd_window;
        a_spec.seed = derive_subseed(sa, static_cast<std::uint64_t>(i));
        a_spec.window_lo = in_window.lo;
        a_spec.window_hi = in_window.hi;
        as.push_back(generate(a_spec).matrices[0]);
      }
      sub = verify_hansen_type(as, {fam.blocks}, in_window, fs, cfg.tol);
    }
    merge_instance(r, sub, t);
    if (sub.extra.contains("out_of_hypothesis")) {
      nlohmann::json e = sub.extra.at("out_of_hypothesis");
      e["trial"] = t;
      r.extra["exploration"].push_back(std::move(e));
    }
  }
  r.trials = cfg.trials;
  return r;
}

SuiteReport run_square_order(const RunConfig& cfg, const InputPair& input) {
  std::vector<ScalarFunctionSpec> fs = resolve_functions(cfg, /*convex=*/true);
  require_convex(fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  if (input) {
    merge_instance(r, verify_square_order(input->first, input->second, fs, cfg.tol), 0);
    r.trials = 1;
    return r;
  }
  int forward_branches = 0;
  int converse_branches = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    InstanceSpec spec;
    spec.dim = cfg.dim;
    spec.kind = InstanceKind::ordered_pair_sq_leq;
    spec.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t));
    const Instance inst = generate(spec);
    const SuiteReport sub = verify_square_order(inst.matrices[0], inst.matrices[1], fs, cfg.tol);
    if (sub.extra.value("branch", "") == "forward") ++forward_branches;
    merge_instance(r, sub, t);
  }
  // Converse half: PSD pairs rejected until A^2 - B^2 is decisively indefinite.
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t chain = derive_subseed(cfg.seed, static_cast<std::uint64_t>(cfg.trials + t));
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      InstanceSpec sa;
      sa.dim = cfg.dim;
      sa.kind = InstanceKind::psd;
      sa.seed = derive_subseed(chain, static_cast<std::uint64_t>(attempt) * 2);
      InstanceSpec sb = sa;
      sb.seed = derive_subseed(chain, static_cast<std::uint64_t>(attempt) * 2 + 1);
      const HermitianMatrix a = generate(sa).matrices[0];
      const HermitianMatrix b = generate(sb).matrices[0];
      const HermitianMatrix gap = hermitian_square(a) - hermitian_square(b);
      const double scale = 1.0 + gap.max_abs_entry();
      if (min_eigenvalue(gap) >= -1e-3 * scale) continue;
      found = true;
      const SuiteReport sub = verify_square_order(a, b, fs, cfg.tol);
      if (sub.extra.value("branch", "") == "converse") ++converse_branches;
      merge_instance(r, sub, cfg.trials + t);
    }
    if (!found)
      throw GenerationError("square-order converse instance rejection budget exhausted", 200, 0);
  }
  r.trials = 2 * cfg.trials;
  r.extra["forward_branches"] = forward_branches;
  r.extra["converse_branches"] = converse_branches;
  return r;
}

SuiteReport run_power_monotone(const RunConfig& cfg, const InputPair& input) {
  SelectorSplit sel = split_selectors(cfg, 0.4);
  if (sel.fs.empty()) sel.fs = convex_subset();
  require_convex(sel.fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  r.params["p"] = sel.p;
  if (input) {
    merge_instance(r, verify_power_monotone(input->first, input->second, sel.p, sel.fs, cfg.tol),
                   0);
    r.trials = 1;
    return r;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    InstanceSpec spec;
    spec.dim = cfg.dim;
    spec.kind = InstanceKind::ordered_pair_leq;
    spec.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t));
    const Instance inst = generate(spec);
    // ordered_pair_leq yields (B, A) with B <= A.
    merge_instance(
        r, verify_power_monotone(inst.matrices[1], inst.matrices[0], sel.p, sel.fs, cfg.tol), t);
  }
  r.trials = cfg.trials;
  return r;
}

SuiteReport run_tf_corollary(const RunConfig& cfg, const InputPair& input) {
  SelectorSplit sel = split_selectors(cfg, 0.4);
  if (sel.fs.empty()) sel.fs = monotone_subset();
  require_monotone(sel.fs, cfg.suite);
  SuiteReport r = base_report(cfg, input);
  r.params["p"] = sel.p;
  if (input) {
    int idx = 0;
    for (const auto& f : sel.fs)
      merge_instance(r, verify_tf_corollary(input->first, input->second, sel.p, f, cfg.tol),
                     idx++);
    r.trials = static_cast<int>(sel.fs.size());
    return r;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    InstanceSpec spec;
    spec.dim = cfg.dim;
    spec.kind = InstanceKind::ordered_pair_leq;
    spec.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(t));
    const Instance inst = generate(spec);
    // Ridge keeps both matrices invertible for the order-reversing branch.
    const HermitianMatrix ridge = 0.5 * HermitianMatrix::identity(cfg.dim);
    const HermitianMatrix b = inst.matrices[0] + ridge;
    const HermitianMatrix a = inst.matrices[1] + ridge;
    for (const auto& f : sel.fs)
      merge_instance(r, verify_tf_corollary(a, b, sel.p, f, cfg.tol), t);
  }
  r.trials = cfg.trials;
  return r;
}

SuiteReport run_loewner(const RunConfig& cfg, const InputPair& input) {
  reject_input(cfg, input);
  SuiteReport r = base_report(cfg, input);
  r.extra["non_monotone_confirmed"] = nlohmann::json::array();
  int executed = 0;

  // Order-6 certificates across the monotone catalog entries at defaults.
  const std::vector<ScalarFunctionSpec> entries =
      tagged_entries(FunctionTag::nonneg_operator_monotone);
  std::uint64_t idx = 0;
  for (const auto& f : entries) {
    const SuiteReport sub =
        order_n_monotone(f, 6, cfg.trials, derive_subseed(cfg.seed, idx), f.domain, 1e-9);
    r.extra["cases"].push_back({{"trial", static_cast<int>(idx)},
                                {"label", "order-6:" + f.display_name()},
                                {"margin", sub.extra.value("min_margin", 0.0)}});
    for (FailureRecord fr : sub.failures) {
      fr.label = "order-6:" + fr.label;
      r.failures.push_back(std::move(fr));
    }
    executed += cfg.trials;
    ++idx;
  }

  // Completeness: the convex-only entries must visibly fail order 2.
  for (const char* id : {"t_squared", "t_cubed"}) {
    const ScalarFunctionSpec f = lookup(id);
    const SuiteReport sub =
        order_n_monotone(f, 2, 200, derive_subseed(cfg.seed, 1000 + idx), f.domain, 1e-9);
    executed += 200;
    if (sub.failures.empty()) {
      FailureRecord fr;
      fr.trial = static_cast<int>(idx);
      fr.label = std::string("no-order-2-violation:") + id;
      r.failures.push_back(std::move(fr));
    } else {
      const FailureRecord& first = sub.failures.front();
      r.extra["non_monotone_confirmed"].push_back(
          {{"function", id},
           {"trials_to_first_violation", first.trial + 1},
           {"witness_points", first.points},
           {"min_eigenvalue", first.min_eigenvalue}});
      r.extra["cases"].push_back({{"trial", static_cast<int>(idx)},
                                  {"label", std::string("order-2-violation:") + id},
                                  {"margin", first.min_eigenvalue}});
    }
    ++idx;
  }
  r.trials = executed;
  return r;
}

SuiteReport run_composition(const RunConfig& cfg, const InputPair& input) {
  reject_input(cfg, input);
  SuiteReport r = base_report(cfg, input);
  nlohmann::json table = nlohmann::json::array();
  const std::vector<ScalarFunctionSpec> convex = convex_subset();
  int matches = 0;
  std::uint64_t combo = 0;
  int trial_idx = 0;
  for (const double p : {0.1, 0.25, 0.5, 0.6, 0.75, 0.9}) {
    const bool expected_good = p <= 0.5;
    const ScalarFunctionSpec g = lookup("power", {{"p", p}});
    const PickReport pick = pick_scan(g);

    bool order_checks_passed = true;
    int violations_found = 0;
    int trials_to_violation = -1;
    if (expected_good) {
      // Every convex outer entry must stay order-4 monotone after composition.
      for (const auto& f : convex) {
        const SuiteReport sub =
            composition_monotone_check(f, g, 4, cfg.trials, derive_subseed(cfg.seed, combo++));
        if (!sub.failures.empty()) {
          order_checks_passed = false;
          for (FailureRecord fr : sub.failures) {
            fr.label = "compose(" + f.display_name() + "|" + g.display_name() + ")";
            fr.trial = trial_idx;
            r.failures.push_back(std::move(fr));
          }
        }
      }
    } else {
      // One convex witness suffices: t^2 o t^p = t^{2p} must fail order 2.
      const SuiteReport sub = composition_monotone_check(lookup("t_squared"), g, 2, 200,
                                                         derive_subseed(cfg.seed, combo++));
      violations_found = static_cast<int>(sub.failures.size());
      if (violations_found > 0) trials_to_violation = sub.failures.front().trial + 1;
    }

    const bool classified_good = expected_good
                                     ? (pick.is_first_quadrant_on_grid && order_checks_passed)
                                     : !(pick.is_first_quadrant_on_grid || violations_found == 0);
    if (classified_good) {
      ++matches;
    } else {
      FailureRecord fr;
      fr.trial = trial_idx;
      fr.label = "dichotomy-mismatch:" + g.display_name();
      fr.min_eigenvalue = pick.min_re;
      r.failures.push_back(std::move(fr));
    }
    nlohmann::json row = {{"p", p},
                          {"first_quadrant_on_grid", pick.is_first_quadrant_on_grid},
                          {"min_re_on_grid", pick.min_re},
                          {"expected_good", expected_good},
                          {"match", classified_good}};
    if (expected_good)
      row["order_4_passed"] = order_checks_passed;
    else {
      row["order_2_violations"] = violations_found;
      row["trials_to_first_violation"] = trials_to_violation;
    }
    table.push_back(std::move(row));
    r.extra["cases"].push_back({{"trial", trial_idx},
                                {"label", "dichotomy:" + g.display_name()},
                                {"margin", classified_good ? 1.0 : -1.0}});
    ++trial_idx;
  }
  r.extra["dichotomy"] = {{"matches", matches}, {"total", 6}, {"table", std::move(table)}};
  r.trials = 6;
  return r;
}

SuiteReport run_coupling(const RunConfig& cfg, const InputPair& input) {
  reject_input(cfg, input);
  const std::vector<ScalarFunctionSpec> fs = monotone_subset();
  const std::vector<double> grid = default_lambda_grid();
  SuiteReport r = base_report(cfg, input);
  int accepted = 0;
  int skipped = 0;
  int agreements = 0;
  const int attempt_cap = 50 * std::max(cfg.trials, 1);
  for (int attempt = 0; attempt < attempt_cap && accepted < cfg.trials; ++attempt) {
    InstanceSpec sa;
    sa.dim = cfg.dim;
    sa.kind = InstanceKind::psd;
    sa.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(attempt) * 2);
    InstanceSpec sb = sa;
    sb.seed = derive_subseed(cfg.seed, static_cast<std::uint64_t>(attempt) * 2 + 1);
    const HermitianMatrix a = generate(sa).matrices[0];
    const HermitianMatrix b = generate(sb).matrices[0];
    const HermitianMatrix s = symmetrized_product(a, b);
    const double s_min = min_eigenvalue(s);
    const double dead_band = 1e-6 * (1.0 + spectral_norm(a) * spectral_norm(b));
    if (std::abs(s_min) <= dead_band) {
      ++skipped;
      continue;
    }
    const bool predicted_subadditive = s_min > 0.0;
    bool observed_subadditive;
    if (predicted_subadditive) {
      const SuiteReport sub = verify_subadditivity_forward(a, b, fs, cfg.tol);
      observed_subadditive = sub.failures.empty();
    } else {
      const SuiteReport sub = verify_subadditivity_converse(a, b, grid, cfg.tol);
      // A found violation means subadditivity breaks, matching the prediction.
      observed_subadditive = !sub.failures.empty();
    }
    const bool agree = predicted_subadditive == observed_subadditive;
    if (agree) ++agreements;
    r.extra["cases"].push_back(
        {{"trial", accepted},
         {"label", std::string(predicted_subadditive ? "predict-pass" : "predict-violation") +
                       (agree ? ":agree" : ":disagree")},
         {"margin", s_min}});
    if (!agree) {
      FailureRecord fr;
      fr.trial = accepted;
      fr.label = predicted_subadditive ? "prediction-mismatch:jordan-positive"
                                       : "prediction-mismatch:jordan-indefinite";
      fr.min_eigenvalue = s_min;
      fr.matrices.push_back(matrix_to_json(a));
      fr.matrices.push_back(matrix_to_json(b));
      r.failures.push_back(std::move(fr));
    }
    ++accepted;
  }
  if (accepted < cfg.trials)
    throw GenerationError("coupling suite exhausted its attempt budget", attempt_cap, accepted);
  r.trials = accepted;
  r.extra["dead_band_skipped"] = skipped;
  r.extra["agreements"] = agreements;
  return r;
}

SuiteReport run_suite_impl(const RunConfig& cfg, const InputPair& input);

SuiteReport run_all(const RunConfig& cfg, const InputPair& input) {
  reject_input(cfg, input);
  SuiteReport r = base_report(cfg, input);
  r.extra.erase("cases");
  r.extra["sub_reports"] = nlohmann::json::array();
  std::uint64_t idx = 0;
  for (const auto& name : registry()) {
    if (name == "all") continue;
    RunConfig sub_cfg = cfg;
    sub_cfg.suite = name;
    sub_cfg.seed = derive_subseed(cfg.seed, idx++);
    sub_cfg.input_path.clear();
    const SuiteReport sub = run_suite_impl(sub_cfg, std::nullopt);
    r.trials += sub.trials;
    for (FailureRecord f : sub.failures) {
      f.label = name + "/" + f.label;
      r.failures.push_back(std::move(f));
    }
    nlohmann::json body = sub.to_json();
    body.erase("wall_time_seconds");
    r.extra["sub_reports"].push_back(std::move(body));
  }
  return r;
}

SuiteReport run_suite_impl(const RunConfig& cfg, const InputPair& input) {
  if (cfg.suite == "thm-subadd-fwd") return run_subadd_fwd(cfg, input);
  if (cfg.suite == "thm-subadd-conv") return run_subadd_conv(cfg, input);
  if (cfg.suite == "gustafson") return run_gustafson(cfg, input);
  if (cfg.suite == "window-subadd") return run_window_subadd(cfg, input);
  if (cfg.suite == "power-split") return run_power_split(cfg, input);
  if (cfg.suite == "hansen") return run_hansen(cfg, input);
  if (cfg.suite == "square-order") return run_square_order(cfg, input);
  if (cfg.suite == "power-monotone") return run_power_monotone(cfg, input);
  if (cfg.suite == "tf-corollary") return run_tf_corollary(cfg, input);
  if (cfg.suite == "loewner") return run_loewner(cfg, input);
  if (cfg.suite == "composition") return run_composition(cfg, input);
  if (cfg.suite == "coupling") return run_coupling(cfg, input);
  if (cfg.suite == "all") return run_all(cfg, input);
  throw UsageError("unknown suite '" + cfg.suite + "'; valid suites: " + joined_names());
}

InputPair load_input(const std::string& path) {
  if (path.empty()) return std::nullopt;
  const nlohmann::json j = load_json_file(path);
  if (j.contains("A") && j.contains("B"))
    return std::make_pair(hermitian_from_json(j.at("A")), hermitian_from_json(j.at("B")));
  if (j.contains("re")) {
    HermitianMatrix m = hermitian_from_json(j);
    return std::make_pair(m, m);
  }
  throw ValidationError("input file must hold a matrix {n, re, im} or a pair {A, B}");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_csv(const SuiteReport& r) {
  std::ostringstream out;
  out << "trial,label,margin\n";
  if (r.extra.contains("cases"))
    for (const auto& c : r.extra.at("cases")) {
      out << c.value("trial", -1) << ',' << csv_field(c.value("label", std::string{})) << ',';
      nlohmann::json margin = c.contains("margin") ? c.at("margin") : nlohmann::json();
      out << margin.dump() << '\n';
    }
  return out.str();
}

std::string format_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite:    " << r.suite << '\n';
  out << "seed:     " << r.seed << '\n';
  out << "trials:   " << r.trials << '\n';
  out << "failures: " << r.failures.size() << '\n';
  if (r.extra.contains("cases") && !r.extra.at("cases").empty()) {
    double min_margin = std::numeric_limits<double>::infinity();
    std::string where;
    for (const auto& c : r.extra.at("cases")) {
      if (!c.contains("margin") || !c.at("margin").is_number()) continue;
      const double m = c.at("margin").get<double>();
      if (m < min_margin) {
        min_margin = m;
        where = c.value("label", std::string{});
      }
    }
    if (std::isfinite(min_margin))
      out << "min margin: " << min_margin << "  (" << where << ")\n";
  }
  size_t shown = 0;
  for (const auto& f : r.failures) {
    if (shown++ == 10) {
      out << "  ... " << (r.failures.size() - 10) << " more\n";
      break;
    }
    out << "  FAIL trial " << f.trial << "  " << f.label << "  min_eig " << f.min_eigenvalue
        << '\n';
  }
  out << "result:   " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  throw UsageError("unknown format '" + name + "'; valid formats: json, csv, text");
}

std::vector<std::string> suite_names() { return registry(); }

SuiteReport run_suite(const RunConfig& config) {
  if (config.dim < 1 || config.dim > 64)
    throw UsageError("--dim must lie in [1, 64]");
  if (config.trials < 1) throw UsageError("--trials must be at least 1");
  if (!(config.tol > 0.0)) throw UsageError("--tol must be positive");
  const InputPair input = load_input(config.input_path);
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report = run_suite_impl(config, input);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ReplayResult replay(const std::string& report_path) {
  const nlohmann::json stored = load_json_file(report_path);
  const SuiteReport old = SuiteReport::from_json(stored);

  RunConfig cfg;
  cfg.suite = old.suite;
  cfg.seed = old.seed;
  cfg.tol = old.tolerances.value("tol", 1e-8);
  if (!old.params.contains("config"))
    throw ValidationError("report lacks the params.config echo needed for replay");
  const nlohmann::json& echo = old.params.at("config");
  cfg.dim = echo.value("dim", 4);
  cfg.trials = echo.value("trials", 100);
  if (echo.contains("functions"))
    cfg.function_selectors = echo.at("functions").get<std::vector<std::string>>();

  InputPair input;
  if (old.params.contains("input"))
    input = std::make_pair(hermitian_from_json(old.params.at("input").at("A")),
                           hermitian_from_json(old.params.at("input").at("B")));

  ReplayResult result;
  const auto start = std::chrono::steady_clock::now();
  result.report = run_suite_impl(cfg, input);
  result.report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json canon = stored;
  canon.erase("wall_time_seconds");
  result.stored_body = canon.dump(2);
  result.matches = result.report.body_string() == result.stored_body;
  return result;
}

std::string format_report(const SuiteReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return report.to_json().dump(2) + "\n";
    case ReportFormat::csv:
      return format_csv(report);
    case ReportFormat::text:
      return format_text(report);
  }
  throw UsageError("unhandled report format");
}

void write_report(const SuiteReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << format_report(report, format);
  if (!out) throw ValidationError("failed while writing '" + path + "'");
}

}  // namespace omlab
