#pragma once

#include <map>
#include <string>
#include <vector>

namespace chernforge {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct CheckRecord {
  std::string check_id;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool mod1 = false;  // compare by circle distance
  bool pass = false;
  std::string error;  // non-empty when the check failed to execute
};

struct Report {
  int schema = 1;
  std::string artifact_version = kArtifactVersion;
  std::string scenario;
  int resolution = 0;
  std::map<std::string, double> params;
  std::vector<CheckRecord> checks;

  bool pass() const;
};

/// Deterministic JSON serialization (fixed key order, shortest round-trip
/// doubles); byte-identical across runs with identical inputs.
std::string report_to_json(const Report& r);

/// One line per check, plus a trailer; for terminal output.
std::string report_summary(const Report& r);

}  // namespace chernforge
