#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "quonlab/clebsch.hpp"
#include "quonlab/fock.hpp"
#include "quonlab/number_ops.hpp"

namespace quonlab {

template <class S>
struct Su2Generators {
  int twice_j = 0;
  std::vector<Matrix<S>> j0, jp, jm;  // one block per particle sector

  int n_max() const { return static_cast<int>(j0.size()) - 1; }
  const Matrix<S>& J0(int n) const { return j0.at(n); }
  const Matrix<S>& Jp(int n) const { return jp.at(n); }
  const Matrix<S>& Jm(int n) const { return jm.at(n); }
};

/// (j ∓ ν)(j ± ν + 1) for the raising (dir=+1) / lowering (dir=-1) weight,
/// in doubled-integer arithmetic.
inline mpq_class ladder_weight_sq(int tj, int tnu, int dir) {
  mpq_class w((tj - dir * tnu) * (tj + dir * tnu + 2), 4);
  w.canonicalize();
  return w;
}

/// J0 = Σ_ν ν N_νν, J± = Σ_ν √((j∓ν)(j±ν+1)) N_{ν±1,ν}, assembled from the
/// direct substitution operators, hence independent of q.
template <class S>
Su2Generators<S> build_generators(const FockSpace& sp) {
  Su2Generators<S> g;
  g.twice_j = sp.twice_j();
  const int tj = sp.twice_j();
  for (int n = 0; n <= sp.n_max(); ++n) {
    Matrix<S> m0(sp.dim(n), sp.dim(n));
    Matrix<S> mp(sp.dim(n), sp.dim(n));
    Matrix<S> mm(sp.dim(n), sp.dim(n));
    for (int a = 0; a < sp.n_modes(); ++a) {
      const int tnu = sp.mode_tm(a);
      mpq_class nu(tnu, 2);
      nu.canonicalize();
      m0 += direct_N_matrix<S>(sp, tnu, tnu, n)
                .scaled(ScalarOps<S>::from_rational(nu));
      if (tnu + 2 <= tj)
        mp += direct_N_matrix<S>(sp, tnu + 2, tnu, n)
                  .scaled(ScalarOps<S>::sqrt_rational(
                      ladder_weight_sq(tj, tnu, +1)));
      if (tnu - 2 >= -tj)
        mm += direct_N_matrix<S>(sp, tnu - 2, tnu, n)
                  .scaled(ScalarOps<S>::sqrt_rational(
                      ladder_weight_sq(tj, tnu, -1)));
    }
    g.j0.push_back(std::move(m0));
    g.jp.push_back(std::move(mp));
    g.jm.push_back(std::move(mm));
  }
  return g;
}

/// J² = J0² + (J+J− + J−J+)/2 on one sector.
template <class S>
Matrix<S> casimir(const Su2Generators<S>& g, int n) {
  mpq_class half(1, 2);
  Matrix<S> out = g.J0(n) * g.J0(n);
  out += (g.Jp(n) * g.Jm(n) + g.Jm(n) * g.Jp(n))
             .scaled(ScalarOps<S>::from_rational(half));
  return out;
}

/// Closure of the generator algebra plus Casimir centrality and the
/// Gram-adjointness of the ladder pair.
template <class S>
std::vector<CheckRecord> verify_su2_closure(const FockSpace& sp, const S& q,
                                            double tol) {
  auto g = build_generators<S>(sp);
  std::vector<CheckRecord> out;
  ResidualAgg pm, zp, zm, c0, cp, cm;
  for (int n = 0; n <= sp.n_max(); ++n) {
    const auto &j0 = g.J0(n), &jp = g.Jp(n), &jm = g.Jm(n);
    pm.add(matrix_residual(jp * jm - jm * jp,
                           j0.scaled(ScalarOps<S>::from_long(2))));
    zp.add(matrix_residual(j0 * jp - jp * j0, jp));
    zm.add(matrix_residual(j0 * jm - jm * j0,
                           Matrix<S>(jm.rows(), jm.cols()) - jm));
    Matrix<S> j2 = casimir(g, n);
    c0.add(matrix_residual(j2 * j0, j0 * j2));
    cp.add(matrix_residual(j2 * jp, jp * j2));
    cm.add(matrix_residual(j2 * jm, jm * j2));
  }
  out.push_back(identity_record<S>("eq10", "comm[Jp, Jm] == 2*J0", pm, tol));
  out.push_back(identity_record<S>("eq10", "comm[J0, Jp] == Jp", zp, tol));
  out.push_back(identity_record<S>("eq10", "comm[J0, Jm] == -1*Jm", zm, tol));
  out.push_back(identity_record<S>("eq10", "comm[J2, J0] == 0", c0, tol));
  out.push_back(identity_record<S>("eq10", "comm[J2, Jp] == 0", cp, tol));
  out.push_back(identity_record<S>("eq10", "comm[J2, Jm] == 0", cm, tol));

  // <u, Jp v> = <Jm u, v> under the deformed pairing, away from |q| = 1
  bool endpoint = std::fabs(ScalarOps<S>::to_double(q)) == 1.0;
  if (endpoint) {
    CheckRecord rec;
    rec.suite = "eq10";
    rec.name = "G*Jp == transpose(Jm)*G";
    rec.status = CheckStatus::Endpoint;
    rec.note = "Gram matrix degenerate at |q| = 1; adjointness not asserted";
    out.push_back(std::move(rec));
  } else {
    ResidualAgg adj;
    for (int n = 0; n <= sp.n_max(); ++n) {
      Matrix<S> gram = gram_matrix<S>(sp, n, q);
      adj.add(matrix_residual(gram * g.Jp(n), g.Jm(n).transposed() * gram));
    }
    out.push_back(
        identity_record<S>("eq10", "G*Jp == transpose(Jm)*G", adj, tol));
  }
  for (auto& rec : out) rec.param("twice_j", std::to_string(sp.twice_j()));
  return out;
}

/// Creation operators transform as the components of a rank-j tensor:
/// [J0, b†_μ] = μ b†_μ and [J±, b†_μ] = √((j∓μ)(j±μ+1)) b†_{μ±1}.
template <class S>
std::vector<CheckRecord> verify_tensor_relations(const FockSpace& sp,
                                                 double tol) {
  auto g = build_generators<S>(sp);
  const int tj = sp.twice_j();
  std::vector<CheckRecord> out;
  for (int a = 0; a < sp.n_modes(); ++a) {
    const int tmu = sp.mode_tm(a);
    mpq_class mu(tmu, 2);
    mu.canonicalize();
    ResidualAgg r0, rp, rm;
    for (int n = 0; n + 1 <= sp.n_max(); ++n) {
      Matrix<S> c = creation_matrix<S>(sp, tmu, n);
      r0.add(matrix_residual(g.J0(n + 1) * c - c * g.J0(n),
                             c.scaled(ScalarOps<S>::from_rational(mu))));
      Matrix<S> rhs_p(sp.dim(n + 1), sp.dim(n));
      if (tmu + 2 <= tj)
        rhs_p = creation_matrix<S>(sp, tmu + 2, n)
                    .scaled(ScalarOps<S>::sqrt_rational(
                        ladder_weight_sq(tj, tmu, +1)));
      rp.add(matrix_residual(g.Jp(n + 1) * c - c * g.Jp(n), rhs_p));
      Matrix<S> rhs_m(sp.dim(n + 1), sp.dim(n));
      if (tmu - 2 >= -tj)
        rhs_m = creation_matrix<S>(sp, tmu - 2, n)
                    .scaled(ScalarOps<S>::sqrt_rational(
                        ladder_weight_sq(tj, tmu, -1)));
      rm.add(matrix_residual(g.Jm(n + 1) * c - c * g.Jm(n), rhs_m));
    }
    auto rec0 =
        identity_record<S>("eq9", "comm[J0, bd(mu)] == mu*bd(mu)", r0, tol);
    auto recp = identity_record<S>(
        "eq9", "comm[Jp, bd(mu)] == sqrt((j-mu)(j+mu+1))*bd(mu+1)", rp, tol);
    auto recm = identity_record<S>(
        "eq9", "comm[Jm, bd(mu)] == sqrt((j+mu)(j-mu+1))*bd(mu-1)", rm, tol);
    for (auto* rec : {&rec0, &recp, &recm})
      rec->param("twice_j", std::to_string(tj)).param("mu", mode_str(tmu));
    out.push_back(std::move(rec0));
    out.push_back(std::move(recp));
    out.push_back(std::move(recm));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pair coupling with ordinary Clebsch-Gordan coefficients.
// ---------------------------------------------------------------------------

template <class S>
struct CoupledState {
  int tJ = 0, tM = 0;
  FockVector<S> vec;
  S norm_sq = ScalarOps<S>::zero();  // under the deformed pairing
};

/// v = Σ_{m1+m2=M} <j m1; j m2|J M> b†_{m1} b†_{m2} |0>, with its
/// J0 / J² eigenrelations asserted and its deformed norm recorded.
template <class S>
CoupledState<S> couple_pair(const FockSpace& sp, int tJ, int tM, const S& q) {
  if (sp.n_max() < 2)
    throw ConfigError("pair coupling needs a truncation of at least 2");
  const int tj = sp.twice_j();
  if (tJ < 0 || tJ > 2 * tj || std::abs(tM) > tJ || ((tJ - tM) & 1) ||
      (tJ & 1) != (2 * tj & 1))
    throw ConfigError("coupled labels outside the j x j decomposition");
  if (std::fabs(ScalarOps<S>::to_double(q)) == 1.0)
    throw EndpointError("pair coupling not defined at |q| = 1 (Gram rank loss)");

  CoupledState<S> st;
  st.tJ = tJ;
  st.tM = tM;
  st.vec = FockVector<S>::zero(sp, 2);
  for (int tm1 = -tj; tm1 <= tj; tm1 += 2) {
    const int tm2 = tM - tm1;
    if (std::abs(tm2) > tj) continue;
    auto c = clebsch_gordan_exact(tj, tm1, tj, tm2, tJ, tM);
    if (c.is_zero()) continue;
    st.vec.c[sp.word_index({tm1, tm2})] += cg_value<S>(c);
  }

  auto g = build_generators<S>(sp);
  mpq_class m_val(tM, 2), j2_val(tJ * (tJ + 2), 4);
  m_val.canonicalize();
  j2_val.canonicalize();
  auto scaled_v = [&](const mpq_class& f) {
    std::vector<S> out = st.vec.c;
    for (auto& x : out) x = x * ScalarOps<S>::from_rational(f);
    return out;
  };
  auto r0 = vector_residual(mat_vec(g.J0(2), st.vec.c), scaled_v(m_val));
  auto r2 = vector_residual(mat_vec(casimir(g, 2), st.vec.c), scaled_v(j2_val));
  if (!residual_pass<S>(r0, 1e-9) || !residual_pass<S>(r2, 1e-9))
    throw StateError("coupled state failed its eigenrelation assertions");

  Matrix<S> gram = gram_matrix<S>(sp, 2, q);
  auto gv = mat_vec(gram, st.vec.c);
  for (size_t i = 0; i < gv.size(); ++i) st.norm_sq += st.vec.c[i] * gv[i];
  if (ScalarOps<S>::is_zero(st.norm_sq) ||
      ScalarOps<S>::to_double(st.norm_sq) <= 0.0)
    throw StateError("coupled state has non-positive deformed norm");
  return st;
}

/// Full coupling sweep: eigenrelations, ladder consistency, CG row
/// orthonormality, and spanning of the 2-particle sector.
template <class S>
std::vector<CheckRecord> verify_coupling(const FockSpace& sp, const S& q,
                                         double tol) {
  std::vector<CheckRecord> out;
  const int tj = sp.twice_j();
  if (std::fabs(ScalarOps<S>::to_double(q)) == 1.0) {
    CheckRecord rec;
    rec.suite = "coupling";
    rec.name = "pair coupling sweep";
    rec.status = CheckStatus::Endpoint;
    rec.note = "skipped: Gram matrix loses rank at |q| = 1";
    rec.param("twice_j", std::to_string(tj));
    out.push_back(std::move(rec));
    return out;
  }

  auto g = build_generators<S>(sp);
  Matrix<S> j2 = casimir(g, 2);
  Matrix<S> span(sp.dim(2), sp.dim(2));
  size_t col = 0;

  for (int tJ = 2 * tj; tJ >= 0; tJ -= 2) {
    ResidualAgg eig0, eig2, ladder;
    bool norm_ok = true;
    double min_norm = 0.0;
    bool first_norm = true;
    for (int tM = tJ; tM >= -tJ; tM -= 2) {
      auto st = couple_pair<S>(sp, tJ, tM, q);
      for (long r = 0; r < sp.dim(2); ++r) span.at(r, col) = st.vec.c[r];
      ++col;

      mpq_class m_val(tM, 2), j2_val(tJ * (tJ + 2), 4);
      m_val.canonicalize();
      j2_val.canonicalize();
      std::vector<S> m_v = st.vec.c, j2_v = st.vec.c;
      for (auto& x : m_v) x = x * ScalarOps<S>::from_rational(m_val);
      for (auto& x : j2_v) x = x * ScalarOps<S>::from_rational(j2_val);
      eig0.add(vector_residual(mat_vec(g.J0(2), st.vec.c), m_v));
      eig2.add(vector_residual(mat_vec(j2, st.vec.c), j2_v));

      // Jp on (J,M) = sqrt((J-M)(J+M+1)) x (J,M+1); zero on the top rung
      auto raised = mat_vec(g.Jp(2), st.vec.c);
      std::vector<S> expect(raised.size(), ScalarOps<S>::zero());
      if (tM < tJ) {
        auto up = couple_pair<S>(sp, tJ, tM + 2, q);
        mpq_class w((tJ - tM) * (tJ + tM + 2), 4);
        w.canonicalize();
        S wgt = ScalarOps<S>::sqrt_rational(w);
        for (size_t i = 0; i < expect.size(); ++i)
          expect[i] = up.vec.c[i] * wgt;
      }
      ladder.add(vector_residual(raised, expect));

      double nrm = ScalarOps<S>::to_double(st.norm_sq);
      if (first_norm || nrm < min_norm) min_norm = nrm;
      first_norm = false;
      norm_ok = norm_ok && nrm > 0.0;
    }
    auto rec0 = identity_record<S>("coupling", "J0*v == M*v", eig0, tol);
    auto rec2 =
        identity_record<S>("coupling", "J2*v == J(J+1)*v", eig2, tol);
    auto recl = identity_record<S>(
        "coupling", "Jp*v(J,M) == sqrt((J-M)(J+M+1))*v(J,M+1)", ladder, tol);
    CheckRecord recn;
    recn.suite = "coupling";
    recn.name = "deformed norm positive";
    recn.status = norm_ok ? CheckStatus::Pass : CheckStatus::Fail;
    recn.note = "min norm^2 = " + std::to_string(min_norm);
    for (auto* rec : {&rec0, &rec2, &recl, &recn})
      rec->param("twice_j", std::to_string(tj))
          .param("twice_J", std::to_string(tJ));
    out.push_back(std::move(rec0));
    out.push_back(std::move(rec2));
    out.push_back(std::move(recl));
    out.push_back(std::move(recn));
  }

  CheckRecord span_rec;
  span_rec.suite = "coupling";
  span_rec.name = "coupled states span the 2-particle sector";
  span_rec.status = matrix_rank(span) == static_cast<size_t>(sp.dim(2))
                        ? CheckStatus::Pass
                        : CheckStatus::Fail;
  span_rec.param("twice_j", std::to_string(tj))
      .param("dim", std::to_string(sp.dim(2)));
  out.push_back(std::move(span_rec));

  // CG orthonormality: Σ_{m1,m2} C(J,M) C(J',M') = δ
  ResidualAgg ortho;
  for (int tJ = 0; tJ <= 2 * tj; tJ += 2) {
    for (int tJp = 0; tJp <= 2 * tj; tJp += 2) {
      for (int tM = -tJ; tM <= tJ; tM += 2) {
        for (int tMp = -tJp; tMp <= tJp; tMp += 2) {
          S acc = ScalarOps<S>::zero();
          for (int tm1 = -tj; tm1 <= tj; tm1 += 2) {
            int tm2 = tM - tm1;
            if (std::abs(tm2) > tj) continue;
            auto c1 = clebsch_gordan_exact(tj, tm1, tj, tm2, tJ, tM);
            auto c2 = clebsch_gordan_exact(tj, tm1, tj, tm2, tJp, tMp);
            acc += cg_value<S>(c1) * cg_value<S>(c2);
          }
          S expect = (tJ == tJp && tM == tMp) ? ScalarOps<S>::one()
                                              : ScalarOps<S>::zero();
          ortho.add(vector_residual<S>({acc}, {expect}));
        }
      }
    }
  }
  auto rec_o = identity_record<S>(
      "coupling", "sum CG(J,M)*CG(J',M') == delta(J,J')*delta(M,M')", ortho,
      tol);
  rec_o.param("twice_j", std::to_string(tj));
  out.push_back(std::move(rec_o));
  return out;
}

}  // namespace quonlab
