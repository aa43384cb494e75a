#include "omlab/suite_report.hpp"

#include "omlab/errors.hpp"

namespace omlab {

nlohmann::json failure_to_json(const FailureRecord& f) {
  nlohmann::json j;
  j["trial"] = f.trial;
  j["label"] = f.label;
  j["min_eigenvalue"] = f.min_eigenvalue;
  if (!f.points.empty()) j["points"] = f.points;
  if (!f.matrices.empty()) j["matrices"] = f.matrices;
  return j;
}

FailureRecord failure_from_json(const nlohmann::json& j) {
  FailureRecord f;
  f.trial = j.value("trial", -1);
  f.label = j.value("label", std::string{});
  f.min_eigenvalue = j.value("min_eigenvalue", 0.0);
  if (j.contains("points")) f.points = j.at("points").get<std::vector<double>>();
  if (j.contains("matrices")) f.matrices = j.at("matrices");
  return f;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["schema"] = kReportSchemaVersion;
  j["suite"] = suite;
  j["params"] = params;
  j["trials"] = trials;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : failures) fs.push_back(failure_to_json(f));
  j["failures"] = std::move(fs);
  j["seed"] = seed;
  j["tolerances"] = tolerances;
  j["extra"] = extra;
  j["wall_time_seconds"] = wall_time_seconds;
  return j;
}

SuiteReport SuiteReport::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema"))
    throw ValidationError("report JSON lacks a schema version");
  if (j.at("schema").get<int>() != kReportSchemaVersion)
    throw ValidationError("unsupported report schema version " + j.at("schema").dump() +
                          " (expected " + std::to_string(kReportSchemaVersion) + ")");
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  r.params = j.value("params", nlohmann::json::object());
  r.trials = j.value("trials", 0);
  if (j.contains("failures"))
    for (const auto& f : j.at("failures")) r.failures.push_back(failure_from_json(f));
  r.seed = j.value("seed", std::uint64_t{0});
  r.tolerances = j.value("tolerances", nlohmann::json::object());
  r.extra = j.value("extra", nlohmann::json::object());
  r.wall_time_seconds = j.value("wall_time_seconds", 0.0);
  return r;
}

std::string SuiteReport::body_string() const {
  nlohmann::json j = to_json();
  j.erase("wall_time_seconds");
  return j.dump(2);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (0xd1b54a32d192ed03ULL * (index + 1));
  std::uint64_t out = splitmix64(state);
  out = splitmix64(state) ^ out;
  return out;
}

}  // namespace omlab
