#include "quonlab/report.hpp"

#include <json.hpp>

#include <sstream>

namespace quonlab {

std::string report_to_json(const Report& rep, bool with_timings, int indent) {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.config_echo) j["config"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json jc;
    jc["suite"] = c.suite;
    jc["name"] = c.name;
    jc["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.params) jc["params"][k] = v;
    jc["status"] = status_str(c.status);
    jc["residual"] = c.residual;
    if (!c.note.empty()) jc["note"] = c.note;
    if (with_timings) jc["ms"] = c.ms;
    j["checks"].push_back(std::move(jc));
  }
  auto s = rep.summary();
  j["summary"] = {{"total", s.total},
                  {"passed", s.passed},
                  {"failed", s.failed},
                  {"endpoint", s.endpoint},
                  {"skipped", s.skipped}};
  return j.dump(indent) + "\n";
}

std::string report_summary_text(const Report& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << "[" << status_str(c.status) << "] " << c.suite << ": " << c.name;
    if (!c.params.empty()) {
      os << " (";
      bool first = true;
      for (const auto& [k, v] : c.params) {
        if (!first) os << ", ";
        os << k << "=" << v;
        first = false;
      }
      os << ")";
    }
    if (c.status == CheckStatus::Fail) os << "  residual=" << c.residual;
    if (!c.note.empty()) os << "  -- " << c.note;
    os << "\n";
  }
  auto s = rep.summary();
  os << s.passed << "/" << s.total << " checks passed";
  if (s.failed) os << ", " << s.failed << " FAILED";
  if (s.endpoint) os << ", " << s.endpoint << " endpoint-excluded";
  if (s.skipped) os << ", " << s.skipped << " skipped";
  os << "\n";
  return os.str();
}

}  // namespace quonlab
