#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace omlab {

inline constexpr int kReportSchemaVersion = 1;

// One in-hypothesis counterexample: scalar point sets for divided-difference
// failures, matrix JSON blobs for operator failures.
struct FailureRecord {
  int trial = -1;
  std::string label;  // function id, branch, or diagnostic tag
  std::vector<double> points;
  nlohmann::json matrices = nlohmann::json::array();
  double min_eigenvalue = 0.0;
};

// Machine-readable outcome of one verification suite run.
struct SuiteReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();  // config echo + fixtures
  int trials = 0;
  std::vector<FailureRecord> failures;
  std::uint64_t seed = 0;
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json extra = nlohmann::json::object();  // margins, labeled exploration runs
  double wall_time_seconds = 0.0;  // excluded from the replayable body

  bool passed() const { return failures.empty(); }

  nlohmann::json to_json() const;
  static SuiteReport from_json(const nlohmann::json& j);
  // Canonical serialization without timing; the replay contract compares this.
  std::string body_string() const;
};

nlohmann::json failure_to_json(const FailureRecord& f);
FailureRecord failure_from_json(const nlohmann::json& j);

// splitmix64 step; used to derive per-suite and per-trial sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index);

}  // namespace omlab
