#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quonlab/clebsch.hpp"
#include "quonlab/config.hpp"
#include "quonlab/eval.hpp"
#include "quonlab/suites.hpp"

using namespace quonlab;
using nlohmann::json;

namespace {

std::string j_str(int twice_j) {
  mpq_class j(twice_j, 2);
  j.canonicalize();
  return rational_str(j);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write to '" + path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

bool q_in_range(const mpq_class& q) { return abs(q) <= 1; }

int cmd_run(const std::string& config_path, const std::string& report_path,
            bool timings, double tol_override, bool has_tol) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (!report_path.empty()) cfg.report_json = report_path;
  if (timings) cfg.include_timings = true;
  if (has_tol) cfg.tolerance = tol_override;
  Report rep = run_configured(cfg);
  std::cout << report_summary_text(rep);
  if (!cfg.report_json.empty())
    write_text(cfg.report_json, report_to_json(rep, cfg.include_timings));
  return rep.all_passed() ? 0 : 1;
}

template <class S>
int check_with_backend(int twice_j, int n_max, const mpq_class& q_rat,
                       double tol, const std::string& text) {
  FockSpace sp(twice_j, n_max);
  Engine<S> eng(sp, ScalarOps<S>::from_rational(q_rat));
  IdentityExpression id = parse_identity(text);
  CheckRecord rec = eng.evaluate_identity(id, tol);
  Report rep;
  rep.add(rec);
  std::cout << report_summary_text(rep);
  return rec.failed() ? 1 : 0;
}

int cmd_check(int twice_j, const std::string& q_lit, int n_max, double tol,
              const std::string& expr_text) {
  mpq_class q = parse_rational(q_lit);
  if (!q_in_range(q))
    throw ConfigError("q value '" + q_lit + "' is outside [-1, 1]");
  IdentityExpression probe = parse_identity(expr_text);  // early syntax check
  bool use_float = literal_is_decimal(q_lit) ||
                   expr_has_decimal(probe.lhs) || expr_has_decimal(probe.rhs);
  if (use_float)
    return check_with_backend<double>(twice_j, n_max, q, tol, expr_text);
  return check_with_backend<Exact>(twice_j, n_max, q, tol, expr_text);
}

template <class S>
std::string gram_text(const FockSpace& sp, int n, const S& q,
                      const std::string& q_lit, const std::string& format) {
  Matrix<S> g = gram_matrix(sp, n, q);
  if (format == "csv") {
    std::ostringstream os;
    os << "# quonlab gram j=" << j_str(sp.twice_j()) << " n=" << n
       << " q=" << q_lit << " backend=" << ScalarOps<S>::backend_name()
       << "\n";
    for (size_t r = 0; r < g.rows(); ++r) {
      for (size_t c = 0; c < g.cols(); ++c)
        os << (c ? "," : "") << ScalarOps<S>::str(g.at(r, c));
      os << "\n";
    }
    return os.str();
  }
  json out;
  out["j"] = j_str(sp.twice_j());
  out["n"] = n;
  out["q"] = q_lit;
  out["backend"] = ScalarOps<S>::backend_name();
  out["dim"] = g.rows();
  json rows = json::array();
  for (size_t r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < g.cols(); ++c) {
      if constexpr (ScalarOps<S>::exact)
        row.push_back(ScalarOps<S>::str(g.at(r, c)));
      else
        row.push_back(g.at(r, c));
    }
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out.dump(2);
}

int cmd_gram(int twice_j, const std::string& q_lit, int n,
             const std::string& format, const std::string& out_path) {
  mpq_class q = parse_rational(q_lit);
  if (!q_in_range(q))
    throw ConfigError("q value '" + q_lit + "' is outside [-1, 1]");
  FockSpace sp(twice_j, std::max(n, 1));
  std::string text;
  if (literal_is_decimal(q_lit))
    text = gram_text<double>(sp, n, rational_to_double(q), q_lit, format);
  else
    text = gram_text<Exact>(sp, n, Exact(q), q_lit, format);
  write_text(out_path, text);
  return 0;
}

template <class S>
std::string coeffs_text(int order, const S& q, const std::string& q_lit) {
  SeriesTable<S> table = solve_series_coefficients(order, q);
  json out;
  out["q"] = q_lit;
  out["backend"] = ScalarOps<S>::backend_name();
  out["widened"] = table.widened;
  json orders = json::array();
  for (int k = 1; k <= table.max_order(); ++k) {
    json entry;
    entry["order"] = k;
    json cs = json::array();
    for (const auto& c : table.orders[k - 1]) {
      json one;
      one["perm"] = perm_str(c.perm);
      if (table.widened) {
        std::string pat;
        for (size_t i = 0; i < c.pattern.size(); ++i)
          pat += (i ? "," : "") + std::to_string(c.pattern[i] + 1);
        one["pattern"] = pat;
      }
      if constexpr (ScalarOps<S>::exact)
        one["value"] = ScalarOps<S>::str(c.value);
      else
        one["value"] = c.value;
      cs.push_back(std::move(one));
    }
    entry["coefficients"] = std::move(cs);
    orders.push_back(std::move(entry));
  }
  out["orders"] = std::move(orders);
  return out.dump(2);
}

int cmd_coeffs(int order, const std::string& q_lit,
               const std::string& out_path) {
  mpq_class q = parse_rational(q_lit);
  if (!q_in_range(q))
    throw ConfigError("q value '" + q_lit + "' is outside [-1, 1]");
  std::string text;
  if (literal_is_decimal(q_lit))
    text = coeffs_text<double>(order, rational_to_double(q), q_lit);
  else
    text = coeffs_text<Exact>(order, Exact(q), q_lit);
  write_text(out_path, text);
  return 0;
}

int cmd_cg(int tj1, int tj2, const std::string& out_path) {
  auto entries = cg_table(tj1, tj2);
  json out;
  out["twice_j1"] = tj1;
  out["twice_j2"] = tj2;
  json rows = json::array();
  for (const auto& e : entries) {
    json one;
    one["twice_J"] = e.tJ;
    one["twice_M"] = e.tM;
    one["twice_m1"] = e.tm1;
    one["twice_m2"] = e.tm2;
    one["sign"] = e.value.sign;
    one["radicand"] = rational_str(e.value.radicand);
    rows.push_back(std::move(one));
  }
  out["entries"] = std::move(rows);
  write_text(out_path, out.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quonlab: symbolic-numeric checks for the q-deformed "
               "oscillator algebra"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute the configured check suites");
  std::string config_path, report_path;
  bool timings = false;
  double run_tol = 1e-10;
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--report", report_path, "write the JSON report here");
  run->add_flag("--timings", timings, "include wall times in the JSON report");
  auto* tol_opt =
      run->add_option("--tolerance", run_tol, "relative residual tolerance");

  auto* check = app.add_subcommand("check", "evaluate one identity");
  int c_j = 2, c_nmax = 3;
  std::string c_q = "0";
  double c_tol = 1e-10;
  std::string c_expr;
  check->add_option("--j", c_j, "level as twice_j")->required();
  check->add_option("--q", c_q, "deformation parameter literal")->required();
  check->add_option("--nmax", c_nmax, "truncation N_max");
  check->add_option("--tol", c_tol, "relative residual tolerance");
  check->add_option("expression", c_expr, "identity, e.g. \"comm[Jp, Jm] == 2*J0\"")
      ->required();

  auto* gram = app.add_subcommand("gram", "dump one sector's Gram matrix");
  int g_j = 2, g_n = 2;
  std::string g_q = "0", g_format = "csv", g_out;
  gram->add_option("--j", g_j, "level as twice_j")->required();
  gram->add_option("--q", g_q, "deformation parameter literal")->required();
  gram->add_option("--n", g_n, "particle sector")->required();
  gram->add_option("--format", g_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  gram->add_option("--out", g_out, "output path (default stdout)");

  auto* coeffs =
      app.add_subcommand("coeffs", "solve and export series coefficients");
  int k_order = 1;
  std::string k_q = "0", k_out;
  coeffs->add_option("--order", k_order, "highest series order K")->required();
  coeffs->add_option("--q", k_q, "deformation parameter literal")->required();
  coeffs->add_option("--out", k_out, "output path (default stdout)");

  auto* cg = app.add_subcommand("cg", "export a Clebsch-Gordan table");
  int cg_j1 = 1, cg_j2 = 1;
  std::string cg_out;
  cg->add_option("--j1", cg_j1, "first level as twice_j")->required();
  cg->add_option("--j2", cg_j2, "second level as twice_j")->required();
  cg->add_option("--out", cg_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, report_path, timings, run_tol,
                     !tol_opt->empty());
    if (check->parsed()) return cmd_check(c_j, c_q, c_nmax, c_tol, c_expr);
    if (gram->parsed()) return cmd_gram(g_j, g_q, g_n, g_format, g_out);
    if (coeffs->parsed()) return cmd_coeffs(k_order, k_q, k_out);
    if (cg->parsed()) return cmd_cg(cg_j1, cg_j2, cg_out);
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const EndpointError& e) {
    std::cerr << "endpoint error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
