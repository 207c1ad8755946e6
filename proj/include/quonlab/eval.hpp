#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quonlab/expr.hpp"
#include "quonlab/fock.hpp"
#include "quonlab/number_ops.hpp"
#include "quonlab/su2.hpp"

namespace quonlab {

/// Value of an expression restricted to one source sector: a matrix into a
/// definite target sector, the zero map (no definite target), or "overflow"
/// when some intermediate state would leave the truncated space, in which
/// case the sector cannot be evaluated faithfully and is skipped.
template <class S>
struct SectorVal {
  enum class Kind { Ok, Zero, Overflow };
  Kind kind = Kind::Zero;
  int target = 0;
  Matrix<S> mat;

  static SectorVal ok(int target, Matrix<S> m) {
    return {Kind::Ok, target, std::move(m)};
  }
  static SectorVal zero() { return {Kind::Zero, 0, {}}; }
  static SectorVal overflow() { return {Kind::Overflow, 0, {}}; }
};

/// Realizes parsed expressions as per-sector matrices on one Fock space at
/// one q value.  Number and angular-momentum generators come from the direct
/// substitution construction.
template <class S>
class Engine {
 public:
  Engine(FockSpace sp, S q) : sp_(std::move(sp)), q_(std::move(q)) {}

  const FockSpace& space() const { return sp_; }
  const S& q() const { return q_; }

  /// Structural checks that do not depend on the sector: mode labels must
  /// exist at this level, and exact runs reject decimal literals.
  void validate(const ExprPtr& e) const {
    if (!e) return;
    if constexpr (ScalarOps<S>::exact) {
      if (e->kind == ExprKind::ScalarLit && e->decimal)
        throw ConfigError("decimal literal '" + e->literal +
                          "' requires the float backend");
    }
    switch (e->kind) {
      case ExprKind::Bd:
      case ExprKind::B:
        sp_.mode_pos(e->twice_a);
        break;
      case ExprKind::NOp:
        sp_.mode_pos(e->twice_a);
        sp_.mode_pos(e->twice_b);
        break;
      default:
        break;
    }
    validate(e->lhs);
    validate(e->rhs);
  }

  SectorVal<S> eval(const ExprPtr& e, int source) {
    using V = SectorVal<S>;
    switch (e->kind) {
      case ExprKind::ScalarLit: {
        if (e->rational == 0) return V::zero();
        return V::ok(source, Matrix<S>::identity(sp_.dim(source))
                                 .scaled(ScalarOps<S>::from_rational(e->rational)));
      }
      case ExprKind::QParam:
        if (ScalarOps<S>::is_zero(q_)) return V::zero();
        return V::ok(source, Matrix<S>::identity(sp_.dim(source)).scaled(q_));
      case ExprKind::Bd:
        if (source + 1 > sp_.n_max()) return V::overflow();
        return V::ok(source + 1, creation_matrix<S>(sp_, e->twice_a, source));
      case ExprKind::B:
        if (source == 0) return V::zero();
        return V::ok(source - 1,
                     annihilation_matrix<S>(sp_, e->twice_a, source, q_));
      case ExprKind::NOp:
        return V::ok(source,
                     direct_N_matrix<S>(sp_, e->twice_a, e->twice_b, source));
      case ExprKind::J0: return V::ok(source, gens().J0(source));
      case ExprKind::Jp: return V::ok(source, gens().Jp(source));
      case ExprKind::Jm: return V::ok(source, gens().Jm(source));
      case ExprKind::Add:
        return combine(eval(e->lhs, source), eval(e->rhs, source), false);
      case ExprKind::Sub:
        return combine(eval(e->lhs, source), eval(e->rhs, source), true);
      case ExprKind::Mul: return compose(e->lhs, e->rhs, source);
      case ExprKind::Comm:
        return combine(compose(e->lhs, e->rhs, source),
                       compose(e->rhs, e->lhs, source), true);
      case ExprKind::QMut: {
        auto ba = compose(e->rhs, e->lhs, source);
        if (ba.kind == SectorVal<S>::Kind::Ok) ba.mat = ba.mat.scaled(q_);
        else if (ScalarOps<S>::is_zero(q_) &&
                 ba.kind == SectorVal<S>::Kind::Overflow)
          ba = V::zero();
        return combine(compose(e->lhs, e->rhs, source), ba, true);
      }
    }
    throw StateError("unreachable expression kind");
  }

  /// Evaluates both sides of the identity on every sector, aggregates the
  /// per-sector residuals, and reports sectors skipped because either side
  /// overflows the truncation.
  CheckRecord evaluate_identity(const IdentityExpression& id, double tol,
                                const std::string& suite = "check") {
    validate(id.lhs);
    validate(id.rhs);
    ResidualAgg agg;
    std::vector<int> skipped;
    for (int n = 0; n <= sp_.n_max(); ++n) {
      auto l = eval(id.lhs, n);
      auto r = eval(id.rhs, n);
      if (l.kind == SectorVal<S>::Kind::Overflow ||
          r.kind == SectorVal<S>::Kind::Overflow) {
        skipped.push_back(n);
        continue;
      }
      if (l.kind == SectorVal<S>::Kind::Zero &&
          r.kind == SectorVal<S>::Kind::Zero) {
        agg.add({0.0, true});
      } else if (l.kind == SectorVal<S>::Kind::Zero) {
        agg.add(matrix_residual(r.mat, Matrix<S>(r.mat.rows(), r.mat.cols())));
      } else if (r.kind == SectorVal<S>::Kind::Zero) {
        agg.add(matrix_residual(l.mat, Matrix<S>(l.mat.rows(), l.mat.cols())));
      } else if (l.target != r.target) {
        // different particle-number shifts: equal only if both vanish
        agg.add(matrix_residual(l.mat, Matrix<S>(l.mat.rows(), l.mat.cols())));
        agg.add(matrix_residual(r.mat, Matrix<S>(r.mat.rows(), r.mat.cols())));
      } else {
        agg.add(matrix_residual(l.mat, r.mat));
      }
    }
    std::string name = id.source.empty() ? identity_str(id) : id.source;
    CheckRecord rec;
    if (static_cast<int>(skipped.size()) == sp_.n_max() + 1) {
      rec.suite = suite;
      rec.name = name;
      rec.status = CheckStatus::Skipped;
      rec.note = "no sector fits within N_max";
    } else {
      rec = identity_record<S>(suite, name, agg, tol);
      if (!skipped.empty()) {
        std::string s;
        for (size_t i = 0; i < skipped.size(); ++i)
          s += (i ? "," : "") + std::to_string(skipped[i]);
        rec.note = "sectors " + s + " skipped (would exceed N_max)";
      }
    }
    mpq_class j(sp_.twice_j(), 2);
    j.canonicalize();
    rec.param("j", rational_str(j))
        .param("N_max", std::to_string(sp_.n_max()))
        .param("q", ScalarOps<S>::str(q_));
    return rec;
  }

 private:
  const Su2Generators<S>& gens() {
    if (!gens_) gens_ = build_generators<S>(sp_);
    return *gens_;
  }

  /// a + b or a - b with zero/overflow propagation; both summands must map a
  /// sector to the same target.
  SectorVal<S> combine(SectorVal<S> a, SectorVal<S> b, bool subtract) {
    using K = typename SectorVal<S>::Kind;
    if (a.kind == K::Overflow || b.kind == K::Overflow)
      return SectorVal<S>::overflow();
    if (b.kind == K::Zero) return a;
    if (a.kind == K::Zero) {
      if (subtract) b.mat = b.mat.scaled(ScalarOps<S>::from_long(-1));
      return b;
    }
    if (a.target != b.target)
      throw StateError(
          "sum mixes operators with different particle-number shifts");
    a.mat = subtract ? a.mat - b.mat : a.mat + b.mat;
    return a;
  }

  /// lhs∘rhs from `source`: evaluate rhs first, then lhs from its target.
  SectorVal<S> compose(const ExprPtr& lhs, const ExprPtr& rhs, int source) {
    using K = typename SectorVal<S>::Kind;
    auto r = eval(rhs, source);
    if (r.kind != K::Ok) return r;
    auto l = eval(lhs, r.target);
    if (l.kind != K::Ok) return l;
    return SectorVal<S>::ok(l.target, l.mat * r.mat);
  }

  FockSpace sp_;
  S q_;
  std::optional<Su2Generators<S>> gens_;
};

}  // namespace quonlab
