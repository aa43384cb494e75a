// Command-line front end for the verification suites.
//
// Exit codes: 0 suite passed (or replay matched), 1 counterexamples found or
// replay mismatch, 2 invalid configuration or input.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omlab/errors.hpp"
#include "omlab/suites.hpp"

namespace {

int run(const omlab::RunConfig& cfg) {
  const omlab::SuiteReport report = omlab::run_suite(cfg);
  const omlab::ReportFormat fmt = cfg.format;
  if (cfg.output_path.empty())
    std::cout << omlab::format_report(report, fmt);
  else
    omlab::write_report(report, cfg.output_path, fmt);
  if (!report.passed())
    std::cerr << "omlab-cli: suite '" << cfg.suite << "' recorded " << report.failures.size()
              << " failure(s)\n";
  return report.passed() ? 0 : 1;
}

int run_replay(const std::string& path) {
  const omlab::ReplayResult result = omlab::replay(path);
  if (result.matches) {
    std::cout << "replay: match (suite '" << result.report.suite << "', seed "
              << result.report.seed << ", " << result.report.trials << " trials)\n";
    return 0;
  }
  std::cerr << "replay: MISMATCH against " << path << "\n";
  const std::string fresh = result.report.body_string();
  const size_t n = std::min(fresh.size(), result.stored_body.size());
  size_t at = n;
  for (size_t i = 0; i < n; ++i)
    if (fresh[i] != result.stored_body[i]) {
      at = i;
      break;
    }
  if (at == n && fresh.size() != result.stored_body.size())
    std::cerr << "  bodies diverge in length: fresh " << fresh.size() << " vs stored "
              << result.stored_body.size() << " bytes\n";
  else
    std::cerr << "  first divergence at byte " << at << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification suites for symmetrized-product operator inequalities"};
  app.get_formatter()->column_width(36);

  omlab::RunConfig cfg;
  std::string format_name = "json";
  std::string replay_path;

  auto* suite_opt =
      app.add_option("--suite", cfg.suite,
                     "Suite to run (one of: " + [] {
                       std::string s;
                       for (const auto& n : omlab::suite_names()) {
                         if (!s.empty()) s += ", ";
                         s += n;
                       }
                       return s;
                     }() + ")");
  app.add_option("--dim", cfg.dim, "Matrix dimension for generated instances")
      ->check(CLI::Range(1, 64));
  app.add_option("--trials", cfg.trials, "Number of randomized trials");
  app.add_option("--seed", cfg.seed, "Master RNG seed");
  app.add_option("--tol", cfg.tol, "PSD margin tolerance");
  app.add_option("--function", cfg.function_selectors,
                 "Function selector id[:k=v[,k=v...]]; repeatable");
  app.add_option("--input", cfg.input_path, "JSON file with a matrix {n,re,im} or a pair {A,B}");
  app.add_option("--out", cfg.output_path, "Write the report here instead of stdout");
  app.add_option("--format", format_name, "Report format: json, csv, or text");
  auto* replay_opt =
      app.add_option("--replay", replay_path,
                     "Re-execute the config echoed in a stored JSON report and "
                     "compare canonical bodies");
  replay_opt->excludes(suite_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.format = omlab::parse_format(format_name);
    if (!replay_path.empty()) return run_replay(replay_path);
    if (cfg.suite.empty())
      throw omlab::UsageError("either --suite or --replay is required (see --help)");
    return run(cfg);
  } catch (const omlab::UsageError& e) {
    std::cerr << "omlab-cli: " << e.what() << "\n";
    return 2;
  } catch (const omlab::ValidationError& e) {
    std::cerr << "omlab-cli: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const omlab::PreconditionError& e) {
    std::cerr << "omlab-cli: hypothesis violated by the supplied input: " << e.what() << "\n";
    return 2;
  } catch (const omlab::Error& e) {
    std::cerr << "omlab-cli: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "omlab-cli: unexpected error: " << e.what() << "\n";
    return 1;
  }
}
