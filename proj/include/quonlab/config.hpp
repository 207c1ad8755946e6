#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace quonlab {

/// One batch run: a level, a truncation, a q sweep, and the suites to run.
/// q entries are kept as literals because the notation picks the backend:
/// decimals run float, integers and "p/q" fractions run exact.
struct RunConfig {
  int twice_j = 2;
  std::vector<std::string> q_list = {"-0.9", "0", "0.9"};
  int n_max = 3;
  int series_order = 1;
  std::string backend = "auto";  // auto | exact | float
  std::vector<std::string> checks;  // empty = every suite
  double tolerance = 1e-10;
  std::string report_json;  // empty = no JSON file
  bool include_timings = false;
};

/// Canonical suite order; reports list suites in this order regardless of
/// the order requested.
const std::vector<std::string>& all_suites();

RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);

/// Range/consistency checks; throws ConfigError with the offending field.
void validate_config(const RunConfig& cfg);

/// "exact" or "float", resolved from the explicit backend field or inferred
/// from the q literals.  Decimal notation forces float; mixing decimals with
/// "p/q" fractions in one run is rejected.
std::string resolve_backend(const RunConfig& cfg);

/// q literals parsed to exact rationals (decimals included, e.g. "0.9" =
/// 9/10); validate_config guarantees |q| <= 1.
std::vector<mpq_class> config_q_values(const RunConfig& cfg);

/// The suites this run executes, in canonical order.
std::vector<std::string> resolve_checks(const RunConfig& cfg);

}  // namespace quonlab
