#include <doctest.h>

#include "quonlab/config.hpp"
#include "quonlab/errors.hpp"
#include "quonlab/suites.hpp"

using namespace quonlab;

TEST_CASE("defaults validate and infer the float backend") {
  RunConfig cfg;
  validate_config(cfg);
  CHECK(cfg.twice_j == 2);
  CHECK(cfg.n_max == 3);
  CHECK(cfg.series_order == 1);
  CHECK(resolve_backend(cfg) == "float");
  CHECK(resolve_checks(cfg) == all_suites());
}

TEST_CASE("json parsing covers literals, numbers and field checks") {
  auto cfg = config_from_json(R"({
    "twice_j": 1,
    "q_list": [-0.9, 0, 0.9],
    "n_max": 2,
    "series_order": 2,
    "checks": ["series", "eq2"],
    "tolerance": 1e-8,
    "report_json": "out.json",
    "include_timings": true
  })");
  CHECK(cfg.twice_j == 1);
  CHECK(cfg.q_list == std::vector<std::string>{"-0.9", "0", "0.9"});
  CHECK(cfg.n_max == 2);
  CHECK(cfg.series_order == 2);
  CHECK(cfg.tolerance == 1e-8);
  CHECK(cfg.report_json == "out.json");
  CHECK(cfg.include_timings);
  validate_config(cfg);
  CHECK(resolve_backend(cfg) == "float");
  // canonical suite order regardless of the order requested
  CHECK(resolve_checks(cfg) == std::vector<std::string>{"eq2", "series"});

  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1,2]"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"qlist": []})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"q_list": [true]})"), ConfigError);
}

TEST_CASE("backend resolution follows the literal notation") {
  RunConfig cfg;
  cfg.q_list = {"1/2", "-2/5", "0"};
  CHECK(resolve_backend(cfg) == "exact");
  cfg.q_list = {"0.5", "0"};
  CHECK(resolve_backend(cfg) == "float");
  cfg.q_list = {"0.5", "1/2"};
  CHECK_THROWS_AS(resolve_backend(cfg), ConfigError);
  cfg.backend = "float";  // explicit backend settles the mix
  CHECK(resolve_backend(cfg) == "float");
  cfg.backend = "exact";
  CHECK_THROWS_AS(resolve_backend(cfg), ConfigError);
  cfg.q_list = {"1/2"};
  CHECK(resolve_backend(cfg) == "exact");
}

TEST_CASE("config validation rejects out-of-range values") {
  auto reject = [](auto&& mutate) {
    RunConfig cfg;
    mutate(cfg);
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  };
  reject([](RunConfig& c) { c.q_list = {"1.5"}; });
  reject([](RunConfig& c) { c.q_list = {"-3/2"}; });
  reject([](RunConfig& c) { c.q_list = {}; });
  reject([](RunConfig& c) { c.q_list = {"abc"}; });
  reject([](RunConfig& c) { c.n_max = 0; });
  reject([](RunConfig& c) { c.series_order = -1; });
  reject([](RunConfig& c) { c.twice_j = -1; });
  reject([](RunConfig& c) { c.tolerance = 0.0; });
  reject([](RunConfig& c) { c.checks = {"eq3"}; });
  reject([](RunConfig& c) { c.backend = "quad"; });
  // endpoints are allowed in configs; suites record them
  RunConfig cfg;
  cfg.q_list = {"1", "-1"};
  validate_config(cfg);
}

TEST_CASE("suite runner handles endpoints per suite") {
  RunConfig cfg;
  cfg.twice_j = 1;
  cfg.n_max = 2;
  cfg.q_list = {"1"};
  cfg.checks = {"eq2", "series", "positivity"};
  Report rep = run_configured(cfg);
  CHECK(rep.all_passed());
  bool series_endpoint = false, eq2_pass = false, pos_endpoint = false;
  for (const auto& rec : rep.checks) {
    if (rec.suite == "series")
      series_endpoint = rec.status == CheckStatus::Endpoint;
    if (rec.suite == "eq2" && rec.status == CheckStatus::Pass) eq2_pass = true;
    if (rec.suite == "positivity")
      pos_endpoint = rec.status == CheckStatus::Endpoint;
  }
  CHECK(series_endpoint);
  CHECK(eq2_pass);
  CHECK(pos_endpoint);
}

TEST_CASE("exact reports are byte-identical across runs") {
  RunConfig cfg;
  cfg.twice_j = 1;
  cfg.n_max = 2;
  cfg.q_list = {"1/2", "-2/5"};
  cfg.checks = {"positivity", "eq2", "series", "coupling"};
  Report a = run_configured(cfg);
  Report b = run_configured(cfg);
  CHECK(a.all_passed());
  CHECK(report_to_json(a) == report_to_json(b));
  // timings vary run to run and are excluded unless requested
  CHECK(report_to_json(a, true) != report_to_json(a, false));
}

TEST_CASE("small exact sweep passes every suite") {
  RunConfig cfg;
  cfg.twice_j = 1;
  cfg.n_max = 3;
  cfg.q_list = {"1/2"};
  cfg.series_order = 1;
  Report rep = run_configured(cfg);
  CHECK(rep.all_passed());
  auto s = rep.summary();
  CHECK(s.failed == 0);
  CHECK(s.total > 0);
  // every requested suite produced at least one record
  for (const auto& name : all_suites()) {
    bool seen = false;
    for (const auto& rec : rep.checks) seen = seen || rec.suite == name;
    CHECK_MESSAGE(seen, name);
  }
  bool echoed = false;
  for (const auto& [k, v] : rep.config_echo)
    if (k == "backend" && v == "exact") echoed = true;
  CHECK(echoed);
}
