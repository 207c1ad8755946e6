#pragma once

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "quonlab/config.hpp"
#include "quonlab/fock.hpp"
#include "quonlab/number_ops.hpp"
#include "quonlab/report.hpp"
#include "quonlab/su2.hpp"

namespace quonlab {

template <class S>
bool at_endpoint(const S& q) {
  try {
    require_not_endpoint(q);
  } catch (const EndpointError&) {
    return true;
  }
  return false;
}

inline std::string double_str(double v) { return ScalarOps<double>::str(v); }

namespace detail {

/// Stamps the per-call wall time (split evenly) and, for q-dependent suites,
/// the q value on every record of one suite call.
template <class F>
std::vector<CheckRecord> timed_suite(const std::string* q_str, F&& call) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckRecord> recs = call();
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  for (auto& r : recs) {
    if (q_str) r.param("q", *q_str);
    r.ms = recs.empty() ? 0.0 : ms / static_cast<double>(recs.size());
  }
  return recs;
}

template <class S>
std::vector<CheckRecord> positivity_suite(const FockSpace& sp, const S& q) {
  std::vector<CheckRecord> out;
  const bool endpoint = at_endpoint(q);
  for (int n = 1; n <= sp.n_max(); ++n) {
    auto pr = check_positivity(sp, n, q);
    CheckRecord rec;
    rec.suite = "positivity";
    rec.name = "gram matrix positive definite";
    rec.param("n", std::to_string(n))
        .param("dim", std::to_string(pr.dim))
        .param("rank", std::to_string(pr.rank))
        .param("method", pr.method);
    if (pr.has_min_eigenvalue)
      rec.param("min_eigenvalue", double_str(pr.min_eigenvalue));
    if (endpoint) {
      rec.status = CheckStatus::Endpoint;
      rec.note = "degenerate at |q| = 1: rank " + std::to_string(pr.rank) +
                 " of " + std::to_string(pr.dim);
    } else {
      rec.status =
          pr.positive_definite ? CheckStatus::Pass : CheckStatus::Fail;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

template <class S>
std::vector<CheckRecord> series_suite(const FockSpace& sp, const S& q,
                                      int order_k, double tol) {
  std::vector<CheckRecord> out;
  if (at_endpoint(q)) {
    CheckRecord rec;
    rec.suite = "series";
    rec.name = "series expansion of N(a,b)";
    rec.status = CheckStatus::Endpoint;
    rec.note = "coefficient denominators vanish at |q| = 1";
    out.push_back(std::move(rec));
    return out;
  }
  SeriesTable<S> table = solve_series_coefficients(order_k, q);

  if (order_k >= 1) {
    S c = table.coeff(1, {0},
                      table.widened ? std::vector<int>{0} : std::vector<int>{});
    S expected = ScalarOps<S>::one() /
                 (ScalarOps<S>::one() - q * q);
    ResidualAgg agg;
    agg.add(vector_residual<S>({c}, {expected}));
    auto rec = identity_record<S>(
        "series", "order-1 coefficient == 1/(1 - q^2)", agg, tol);
    rec.param("value", ScalarOps<S>::str(c));
    out.push_back(std::move(rec));
  }

  for (int k = 0; k <= order_k; ++k) {
    ResidualAgg agg;
    int top = std::min(k + 1, sp.n_max());
    for (int a = 0; a < sp.n_modes(); ++a) {
      for (int b = 0; b < sp.n_modes(); ++b) {
        int alpha = sp.mode_tm(a), beta = sp.mode_tm(b);
        for (int n = 0; n <= top; ++n)
          agg.add(matrix_residual(
              series_N_matrix(sp, alpha, beta, table, k, n, q),
              direct_N_matrix<S>(sp, alpha, beta, n)));
      }
    }
    auto rec = identity_record<S>(
        "series", "series(K) == substitution N on sectors <= K+1", agg, tol);
    rec.param("K", std::to_string(k))
        .param("max_sector", std::to_string(top))
        .param("widened", table.widened ? "true" : "false");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace detail

/// Executes the requested suites over the q sweep.  Suites built purely from
/// the substitution operators do not depend on q and run once; the rest run
/// per q value.  Everything is sequential, so record order is deterministic:
/// canonical suite order, then q in the configured order.
template <class S>
Report run_suites(const RunConfig& cfg) {
  validate_config(cfg);
  Report rep;
  FockSpace sp(cfg.twice_j, cfg.n_max);
  const double tol = cfg.tolerance;
  auto qs = config_q_values(cfg);
  auto checks = resolve_checks(cfg);
  auto want = [&](const std::string& s) {
    return std::find(checks.begin(), checks.end(), s) != checks.end();
  };
  std::vector<S> q_vals;
  std::vector<std::string> q_strs;
  for (const auto& qr : qs) {
    q_vals.push_back(ScalarOps<S>::from_rational(qr));
    q_strs.push_back(ScalarOps<S>::str(q_vals.back()));
  }
  auto sweep = [&](auto&& suite_fn) {
    for (size_t i = 0; i < q_vals.size(); ++i)
      rep.add(detail::timed_suite(&q_strs[i],
                                  [&] { return suite_fn(q_vals[i]); }));
  };

  if (want("positivity"))
    sweep([&](const S& q) { return detail::positivity_suite(sp, q); });
  if (want("eq2"))
    sweep([&](const S& q) { return verify_transition_relations(sp, q, tol); });
  if (want("eq6") || want("eq7")) {
    const int max_tail = std::min(2, sp.n_max() - 1);
    sweep([&](const S& q) {
      std::vector<CheckRecord> recs =
          verify_Y_commutators(sp, q, max_tail, tol);
      std::vector<CheckRecord> kept;
      for (auto& r : recs)
        if (want(r.suite)) kept.push_back(std::move(r));
      return kept;
    });
  }
  if (want("eq8"))
    rep.add(detail::timed_suite(
        nullptr, [&] { return verify_su2jp1_closure<S>(sp, tol); }));
  if (want("eq9"))
    rep.add(detail::timed_suite(
        nullptr, [&] { return verify_tensor_relations<S>(sp, tol); }));
  if (want("eq10"))
    sweep([&](const S& q) { return verify_su2_closure(sp, q, tol); });
  if (want("series"))
    sweep([&](const S& q) {
      return detail::series_suite(sp, q, cfg.series_order, tol);
    });
  if (want("coupling")) {
    if (sp.n_max() < 2) {
      CheckRecord rec;
      rec.suite = "coupling";
      rec.name = "pair coupling sweep";
      rec.status = CheckStatus::Skipped;
      rec.note = "needs N_max >= 2";
      rep.add(std::move(rec));
    } else {
      sweep([&](const S& q) { return verify_coupling(sp, q, tol); });
    }
  }
  return rep;
}

inline Report run_configured(const RunConfig& cfg) {
  validate_config(cfg);
  const std::string backend = resolve_backend(cfg);
  Report rep = backend == "exact" ? run_suites<Exact>(cfg)
                                  : run_suites<double>(cfg);
  std::string qs;
  for (size_t i = 0; i < cfg.q_list.size(); ++i)
    qs += (i ? "," : "") + cfg.q_list[i];
  std::string cs;
  auto checks = resolve_checks(cfg);
  for (size_t i = 0; i < checks.size(); ++i) cs += (i ? "," : "") + checks[i];
  rep.config_echo = {
      {"twice_j", std::to_string(cfg.twice_j)},
      {"q_list", qs},
      {"N_max", std::to_string(cfg.n_max)},
      {"series_order", std::to_string(cfg.series_order)},
      {"backend", backend},
      {"tolerance", double_str(cfg.tolerance)},
      {"checks", cs},
  };
  return rep;
}

}  // namespace quonlab
