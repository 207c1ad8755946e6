#pragma once

#include <string>
#include <utility>
#include <vector>

namespace quonlab {

enum class CheckStatus { Pass, Fail, Endpoint, Skipped };

inline const char* status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Endpoint: return "endpoint";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

/// One verified identity (or diagnostic) with its parameters and residual.
struct CheckRecord {
  std::string suite;
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;
  std::string note;
  double ms = 0.0;

  CheckRecord& param(const std::string& k, const std::string& v) {
    params.emplace_back(k, v);
    return *this;
  }
  bool failed() const { return status == CheckStatus::Fail; }
};

struct ReportSummary {
  long total = 0;
  long passed = 0;
  long failed = 0;
  long endpoint = 0;
  long skipped = 0;
};

struct Report {
  std::vector<CheckRecord> checks;
  std::vector<std::pair<std::string, std::string>> config_echo;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void add(std::vector<CheckRecord> rs) {
    for (auto& r : rs) checks.push_back(std::move(r));
  }
  ReportSummary summary() const {
    ReportSummary s;
    s.total = static_cast<long>(checks.size());
    for (const auto& c : checks) {
      switch (c.status) {
        case CheckStatus::Pass: ++s.passed; break;
        case CheckStatus::Fail: ++s.failed; break;
        case CheckStatus::Endpoint: ++s.endpoint; break;
        case CheckStatus::Skipped: ++s.skipped; break;
      }
    }
    return s;
  }
  bool all_passed() const { return summary().failed == 0; }
};

/// Deterministic JSON rendering; timings are excluded unless requested so
/// repeated runs with one config are byte-identical.
std::string report_to_json(const Report& rep, bool with_timings = false,
                           int indent = 2);

/// One line per check plus a totals line.
std::string report_summary_text(const Report& rep);

}  // namespace quonlab
