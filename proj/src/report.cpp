#include "chernforge/report.hpp"

#include <sstream>

#include "json.hpp"

namespace chernforge {

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = r.schema;
  j["artifact_version"] = r.artifact_version;
  j["scenario"] = r.scenario;
  j["resolution"] = r.resolution;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["check_id"] = c.check_id;
    cj["expected"] = c.expected;
    cj["computed"] = c.computed;
    cj["tolerance"] = c.tolerance;
    cj["mod1"] = c.mod1;
    cj["pass"] = c.pass;
    if (!c.error.empty()) cj["error"] = c.error;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["pass"] = r.pass();
  return j.dump(2) + "\n";
}

std::string report_summary(const Report& r) {
  std::ostringstream os;
  os << "scenario " << r.scenario << " (resolution " << r.resolution << ")\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.check_id
       << ": computed " << c.computed << ", expected " << c.expected
       << (c.mod1 ? " (mod 1)" : "") << ", tol " << c.tolerance;
    if (!c.error.empty()) os << " [error: " << c.error << "]";
    os << "\n";
  }
  os << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks)\n";
  return os.str();
}

}  // namespace chernforge
