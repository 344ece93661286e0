#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "admlie/rational.hpp"

namespace admlie {

inline constexpr const char* kReportSchema = "admlie-report/1";

/// One named verdict inside a report. Verdicts are "pass", "fail" or
/// "inconclusive"; an inconclusive check is not a pass.
struct CheckResult {
  std::string name;
  std::string verdict;
  std::string detail;
};

/// Machine-readable pipeline result. Identical inputs produce byte-identical
/// reports except for the timing_ms field, which comparisons must strip.
struct Report {
  std::string pipeline;
  std::string input;
  std::vector<CheckResult> checks;
  nlohmann::json data = nlohmann::json::object();
  long long timing_ms = 0;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({name, pass ? "pass" : "fail", detail});
  }
  void add_verdict(const std::string& name, const std::string& verdict,
                   const std::string& detail = "") {
    checks.push_back({name, verdict, detail});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.verdict != "pass") return false;
    return true;
  }
};

inline nlohmann::json report_to_json(const Report& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["pipeline"] = r.pipeline;
  j["input"] = r.input;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["verdict"] = c.verdict;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["data"] = r.data;
  j["timing_ms"] = r.timing_ms;
  return j;
}

inline std::string render_report(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

/// 0 all checks pass, 1 at least one check is not a pass.
inline int report_exit_code(const Report& r) { return r.all_pass() ? 0 : 1; }

}  // namespace admlie
