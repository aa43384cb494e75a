#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omlab/suite_report.hpp"

namespace omlab {

enum class ReportFormat { json, csv, text };

ReportFormat parse_format(const std::string& name);  // UsageError on unknown

// Validated CLI/run configuration.
struct RunConfig {
  std::string suite;
  int dim = 4;
  int trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::vector<std::string> function_selectors;  // "id" or "id:k=v,..."
  std::string input_path;                       // optional matrix/pair JSON
  std::string output_path;                      // optional report destination
  ReportFormat format = ReportFormat::json;
};

// Registered suite names (including the "all" battery).
std::vector<std::string> suite_names();

// Executes the named suite. Unknown names or invalid parameters throw
// UsageError listing the valid choices; in-hypothesis counterexamples land in
// the report (exit decision belongs to the caller via report.passed()).
SuiteReport run_suite(const RunConfig& config);

struct ReplayResult {
  SuiteReport report;      // freshly recomputed
  bool matches = false;    // body identical to the stored report
  std::string stored_body; // canonical body loaded from disk
};

// Re-executes the config echoed inside a stored report and compares canonical
// bodies (timing excluded).
ReplayResult replay(const std::string& report_path);

std::string format_report(const SuiteReport& report, ReportFormat format);

// Persists the formatted report; JSON output is the replayable encoding.
void write_report(const SuiteReport& report, const std::string& path, ReportFormat format);

}  // namespace omlab
