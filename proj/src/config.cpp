#include "quonlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quonlab/errors.hpp"
#include "quonlab/scalar.hpp"

namespace quonlab {

using nlohmann::json;

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> suites = {
      "positivity", "eq2",  "eq6",    "eq7",     "eq8",
      "eq9",        "eq10", "series", "coupling"};
  return suites;
}

namespace {

std::string q_entry_literal(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer())
    return std::to_string(v.get<long long>());
  if (v.is_number_float()) return v.dump();  // shortest round-trip text
  throw ConfigError("q_list entries must be numbers or literal strings");
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  RunConfig cfg;
  static const std::vector<std::string> known = {
      "twice_j", "q_list",    "n_max",       "series_order",
      "backend", "checks",    "tolerance",   "report_json",
      "include_timings"};
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config field '" + key + "'");
  }
  if (j.contains("twice_j")) cfg.twice_j = j.at("twice_j").get<int>();
  if (j.contains("q_list")) {
    if (!j.at("q_list").is_array())
      throw ConfigError("q_list must be an array");
    cfg.q_list.clear();
    for (const auto& v : j.at("q_list")) cfg.q_list.push_back(q_entry_literal(v));
  }
  if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
  if (j.contains("series_order"))
    cfg.series_order = j.at("series_order").get<int>();
  if (j.contains("backend")) cfg.backend = j.at("backend").get<std::string>();
  if (j.contains("checks")) {
    if (!j.at("checks").is_array())
      throw ConfigError("checks must be an array of suite names");
    for (const auto& v : j.at("checks"))
      cfg.checks.push_back(v.get<std::string>());
  }
  if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
  if (j.contains("report_json"))
    cfg.report_json = j.at("report_json").get<std::string>();
  if (j.contains("include_timings"))
    cfg.include_timings = j.at("include_timings").get<bool>();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void validate_config(const RunConfig& cfg) {
  if (cfg.twice_j < 0) throw ConfigError("twice_j must be non-negative");
  if (cfg.n_max < 1) throw ConfigError("N_max must be at least 1");
  if (cfg.series_order < 0) throw ConfigError("series_order must be >= 0");
  if (cfg.q_list.empty()) throw ConfigError("q_list must be nonempty");
  if (cfg.tolerance <= 0) throw ConfigError("tolerance must be positive");
  for (const auto& lit : cfg.q_list) {
    mpq_class v = parse_rational(lit);  // throws ConfigError when malformed
    if (abs(v) > 1)
      throw ConfigError("q value '" + lit + "' is outside [-1, 1]");
  }
  if (cfg.backend != "auto" && cfg.backend != "exact" && cfg.backend != "float")
    throw ConfigError("backend must be auto, exact or float");
  resolve_backend(cfg);
  for (const auto& name : cfg.checks) {
    const auto& suites = all_suites();
    if (std::find(suites.begin(), suites.end(), name) == suites.end())
      throw ConfigError("unknown suite '" + name + "'");
  }
}

std::string resolve_backend(const RunConfig& cfg) {
  bool any_decimal = false, any_fraction = false;
  for (const auto& lit : cfg.q_list) {
    if (literal_is_decimal(lit)) any_decimal = true;
    else if (lit.find('/') != std::string::npos) any_fraction = true;
  }
  if (cfg.backend == "exact") {
    if (any_decimal)
      throw ConfigError("decimal q literals require the float backend");
    return "exact";
  }
  if (cfg.backend == "float") return "float";
  if (any_decimal && any_fraction)
    throw ConfigError(
        "q_list mixes decimal (float) and p/q (exact) literals; pick one "
        "notation or set backend explicitly");
  return any_decimal ? "float" : "exact";
}

std::vector<mpq_class> config_q_values(const RunConfig& cfg) {
  std::vector<mpq_class> out;
  out.reserve(cfg.q_list.size());
  for (const auto& lit : cfg.q_list) out.push_back(parse_rational(lit));
  return out;
}

std::vector<std::string> resolve_checks(const RunConfig& cfg) {
  if (cfg.checks.empty()) return all_suites();
  std::vector<std::string> out;
  for (const auto& name : all_suites())
    if (std::find(cfg.checks.begin(), cfg.checks.end(), name) !=
        cfg.checks.end())
      out.push_back(name);
  return out;
}

}  // namespace quonlab
