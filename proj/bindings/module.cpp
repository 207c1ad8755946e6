#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>
#include <vector>

#include "quonlab/clebsch.hpp"
#include "quonlab/config.hpp"
#include "quonlab/eval.hpp"
#include "quonlab/suites.hpp"

namespace py = pybind11;
using namespace quonlab;

namespace {

/// Backend selection mirrors the CLI: python str -> exact rational,
/// python float/int -> float backend.
struct QArg {
  bool exact;
  mpq_class rational;  // exact
  double value;        // float
};

QArg parse_q(const py::object& q) {
  QArg out{};
  if (py::isinstance<py::str>(q)) {
    out.exact = true;
    out.rational = parse_rational(q.cast<std::string>());
    if (abs(out.rational) > 1)
      throw ConfigError("q is outside [-1, 1]");
    return out;
  }
  out.exact = false;
  out.value = q.cast<double>();
  if (std::fabs(out.value) > 1.0) throw ConfigError("q is outside [-1, 1]");
  return out;
}

py::dict record_dict(const CheckRecord& rec) {
  py::dict d;
  d["suite"] = rec.suite;
  d["name"] = rec.name;
  d["status"] = status_str(rec.status);
  d["residual"] = rec.residual;
  d["note"] = rec.note;
  py::dict params;
  for (const auto& [k, v] : rec.params) params[py::str(k)] = v;
  d["params"] = params;
  return d;
}

template <class S>
py::list gram_rows(const FockSpace& sp, int n, const S& q) {
  Matrix<S> g = gram_matrix(sp, n, q);
  py::list rows;
  for (size_t r = 0; r < g.rows(); ++r) {
    py::list row;
    for (size_t c = 0; c < g.cols(); ++c) {
      if constexpr (ScalarOps<S>::exact)
        row.append(ScalarOps<S>::str(g.at(r, c)));
      else
        row.append(g.at(r, c));
    }
    rows.append(row);
  }
  return rows;
}

py::list py_gram(int twice_j, int n, const py::object& q) {
  FockSpace sp(twice_j, std::max(n, 1));
  QArg qa = parse_q(q);
  if (qa.exact) return gram_rows<Exact>(sp, n, Exact(qa.rational));
  return gram_rows<double>(sp, n, qa.value);
}

template <class S>
py::dict check_identity_impl(int twice_j, int n_max, const S& q,
                             const std::string& text, double tol) {
  FockSpace sp(twice_j, n_max);
  Engine<S> eng(sp, q);
  CheckRecord rec = eng.evaluate_identity(parse_identity(text), tol);
  return record_dict(rec);
}

py::dict py_check_identity(const std::string& text, int twice_j,
                           const py::object& q, int n_max, double tol) {
  QArg qa = parse_q(q);
  IdentityExpression probe = parse_identity(text);
  bool decimal_expr = expr_has_decimal(probe.lhs) || expr_has_decimal(probe.rhs);
  if (qa.exact && !decimal_expr)
    return check_identity_impl<Exact>(twice_j, n_max, Exact(qa.rational), text,
                                      tol);
  double qv = qa.exact ? rational_to_double(qa.rational) : qa.value;
  return check_identity_impl<double>(twice_j, n_max, qv, text, tol);
}

py::dict py_positivity(int twice_j, int n, const py::object& q) {
  FockSpace sp(twice_j, std::max(n, 1));
  QArg qa = parse_q(q);
  PositivityReport pr = qa.exact
                            ? check_positivity(sp, n, Exact(qa.rational))
                            : check_positivity(sp, n, qa.value);
  py::dict d;
  d["n"] = pr.n;
  d["dim"] = pr.dim;
  d["positive_definite"] = pr.positive_definite;
  d["rank"] = pr.rank;
  d["method"] = pr.method;
  if (pr.has_min_eigenvalue) d["min_eigenvalue"] = pr.min_eigenvalue;
  return d;
}

template <class S>
py::dict coeffs_impl(int order, const S& q) {
  SeriesTable<S> table = solve_series_coefficients(order, q);
  py::dict d;
  d["widened"] = table.widened;
  py::dict orders;
  for (int k = 1; k <= table.max_order(); ++k) {
    py::dict by_perm;
    for (const auto& c : table.orders[k - 1]) {
      py::object v;
      if constexpr (ScalarOps<S>::exact)
        v = py::str(ScalarOps<S>::str(c.value));
      else
        v = py::float_(c.value);
      by_perm[py::str(perm_str(c.perm))] = v;
    }
    orders[py::str(std::to_string(k))] = by_perm;
  }
  d["orders"] = orders;
  return d;
}

py::dict py_coeffs(int order, const py::object& q) {
  QArg qa = parse_q(q);
  if (qa.exact) return coeffs_impl<Exact>(order, Exact(qa.rational));
  return coeffs_impl<double>(order, qa.value);
}

py::dict py_clebsch(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  SignSqrt v = clebsch_gordan_exact(tj1, tm1, tj2, tm2, tJ, tM);
  py::dict d;
  d["sign"] = v.sign;
  d["radicand"] = rational_str(v.radicand);
  d["value"] = v.to_double();
  return d;
}

template <class S>
py::dict couple_impl(int twice_j, int tJ, int tM, const S& q, int n_max) {
  FockSpace sp(twice_j, n_max);
  auto st = couple_pair<S>(sp, tJ, tM, q);
  py::dict d;
  d["twice_J"] = st.tJ;
  d["twice_M"] = st.tM;
  py::list vec;
  for (const auto& c : st.vec.c) {
    if constexpr (ScalarOps<S>::exact)
      vec.append(ScalarOps<S>::str(c));
    else
      vec.append(c);
  }
  d["vec"] = vec;
  if constexpr (ScalarOps<S>::exact)
    d["norm_sq"] = ScalarOps<S>::str(st.norm_sq);
  else
    d["norm_sq"] = st.norm_sq;
  return d;
}

py::dict py_couple(int twice_j, int tJ, int tM, const py::object& q,
                   int n_max) {
  QArg qa = parse_q(q);
  if (qa.exact) return couple_impl<Exact>(twice_j, tJ, tM, Exact(qa.rational), n_max);
  return couple_impl<double>(twice_j, tJ, tM, qa.value, n_max);
}

py::dict py_run(const std::string& config_json) {
  RunConfig cfg = config_from_json(config_json);
  Report rep = run_configured(cfg);
  py::dict d;
  d["passed"] = rep.all_passed();
  d["json"] = report_to_json(rep, cfg.include_timings);
  d["summary"] = report_summary_text(rep);
  py::list checks;
  for (const auto& rec : rep.checks) checks.append(record_dict(rec));
  d["checks"] = checks;
  return d;
}

}  // namespace

PYBIND11_MODULE(_quonlab, m) {
  m.doc() = "q-deformed oscillator algebra checks";

  py::register_exception<ConfigError>(m, "QuonConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "QuonParseError", PyExc_ValueError);
  py::register_exception<EndpointError>(m, "QuonEndpointError",
                                        PyExc_ArithmeticError);
  py::register_exception<TruncationError>(m, "QuonTruncationError",
                                          PyExc_OverflowError);

  m.def("check_identity", &py_check_identity, py::arg("expression"),
        py::arg("twice_j"), py::arg("q"), py::arg("n_max") = 3,
        py::arg("tol") = 1e-10,
        "Evaluate one identity of the mini-language on every sector; "
        "q as str runs exact, as float runs the float backend.");
  m.def("gram", &py_gram, py::arg("twice_j"), py::arg("n"), py::arg("q"),
        "Gram matrix of the n-particle word basis (rows of str when exact).");
  m.def("positivity", &py_positivity, py::arg("twice_j"), py::arg("n"),
        py::arg("q"), "Positive-definiteness diagnostics for one sector.");
  m.def("series_coefficients", &py_coeffs, py::arg("order"), py::arg("q"),
        "Solved expansion coefficients keyed by order and permutation.");
  m.def("clebsch_gordan", &py_clebsch, py::arg("twice_j1"), py::arg("twice_m1"),
        py::arg("twice_j2"), py::arg("twice_m2"), py::arg("twice_J"),
        py::arg("twice_M"),
        "Exact coupling coefficient as sign * sqrt(radicand).");
  m.def("couple_pair", &py_couple, py::arg("twice_j"), py::arg("twice_J"),
        py::arg("twice_M"), py::arg("q"), py::arg("n_max") = 2,
        "Two-particle state coupled to (J, M), with its deformed norm^2.");
  m.def("run_suites", &py_run, py::arg("config_json"),
        "Run the configured verification suites; returns records and JSON.");
  m.attr("__version__") = "1.0.0";
}
