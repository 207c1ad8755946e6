#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "quonlab/algebra.hpp"
#include "quonlab/matrix.hpp"

namespace quonlab {

/// A word (m1,...,mn) is the state b†_{m1}···b†_{mn}|0⟩, stored as doubled
/// projections.  Leftmost letter = outermost creation operator.
using Word = std::vector<int>;

/// Truncated Fock space for a single j-level: modes twice_m = -2j..2j step 2,
/// sectors n = 0..n_max, each spanned by all (2j+1)^n words enumerated
/// lexicographically in twice_m.
class FockSpace {
 public:
  FockSpace(int twice_j, int n_max) : twice_j_(twice_j), n_max_(n_max) {
    if (twice_j < 0) throw ConfigError("twice_j must be non-negative");
    if (n_max < 1) throw ConfigError("N_max must be at least 1");
  }

  int twice_j() const { return twice_j_; }
  int n_max() const { return n_max_; }
  int n_modes() const { return twice_j_ + 1; }
  int mode_tm(int k) const { return -twice_j_ + 2 * k; }

  bool valid_mode(int twice_m) const {
    return std::abs(twice_m) <= twice_j_ &&
           ((twice_m - twice_j_) % 2 == 0);
  }
  int mode_pos(int twice_m) const {
    if (!valid_mode(twice_m))
      throw ConfigError("mode " + mode_str(twice_m) +
                        " out of range for level 2j=" + std::to_string(twice_j_));
    return (twice_m + twice_j_) / 2;
  }

  long dim(int n) const {
    if (n < 0) return 0;
    long d = 1;
    for (int i = 0; i < n; ++i) d *= n_modes();
    return d;
  }

  Word word_at(int n, long index) const {
    Word w(n);
    for (int k = n - 1; k >= 0; --k) {
      w[k] = mode_tm(static_cast<int>(index % n_modes()));
      index /= n_modes();
    }
    return w;
  }

  long word_index(const Word& w) const {
    long idx = 0;
    for (int tm : w) idx = idx * n_modes() + mode_pos(tm);
    return idx;
  }

 private:
  int twice_j_;
  int n_max_;
};

/// Coefficient vector over the word basis of one sector.
template <class S>
struct FockVector {
  int n = 0;
  std::vector<S> c;

  static FockVector zero(const FockSpace& sp, int n) {
    return {n, std::vector<S>(sp.dim(n), ScalarOps<S>::zero())};
  }
  static FockVector basis(const FockSpace& sp, const Word& w) {
    FockVector v = zero(sp, static_cast<int>(w.size()));
    v.c[sp.word_index(w)] = ScalarOps<S>::one();
    return v;
  }
  static FockVector vacuum(const FockSpace& sp) {
    return basis(sp, Word{});
  }

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(),
                       [](const S& v) { return ScalarOps<S>::is_zero(v); });
  }
  FockVector& operator+=(const FockVector& o) {
    if (n != o.n) throw StateError("sector mismatch in FockVector +=");
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  FockVector scaled(const S& s) const {
    FockVector out = *this;
    for (auto& v : out.c) v = v * s;
    return out;
  }
};

/// b†_m: word (m1,...,mn) -> (m, m1,...,mn).  Throws TruncationError when the
/// result would exceed n_max.
template <class S>
FockVector<S> apply_creation(const FockSpace& sp, int twice_m,
                             const FockVector<S>& v) {
  sp.mode_pos(twice_m);
  if (v.n + 1 > sp.n_max())
    throw TruncationError("creation operator exceeds N_max=" +
                          std::to_string(sp.n_max()));
  auto out = FockVector<S>::zero(sp, v.n + 1);
  for (long i = 0; i < sp.dim(v.n); ++i) {
    if (ScalarOps<S>::is_zero(v.c[i])) continue;
    // prepending mode m shifts the index by a full leading digit
    long target = static_cast<long>(sp.mode_pos(twice_m)) * sp.dim(v.n) + i;
    out.c[target] += v.c[i];
  }
  return out;
}

/// b_m acting on words: b_m (m1,...,mn) = Σ_k q^{k-1} δ_{m,mk} (...,m̂k,...).
/// On the vacuum sector returns the zero vector.
template <class S>
FockVector<S> apply_annihilation(const FockSpace& sp, int twice_m,
                                 const FockVector<S>& v, const S& q) {
  sp.mode_pos(twice_m);
  if (v.n == 0) return FockVector<S>::zero(sp, 0);
  auto out = FockVector<S>::zero(sp, v.n - 1);
  for (long i = 0; i < sp.dim(v.n); ++i) {
    if (ScalarOps<S>::is_zero(v.c[i])) continue;
    Word w = sp.word_at(v.n, i);
    S qpow = ScalarOps<S>::one();
    for (size_t k = 0; k < w.size(); ++k) {
      if (w[k] == twice_m) {
        Word rest;
        rest.reserve(w.size() - 1);
        rest.insert(rest.end(), w.begin(), w.begin() + k);
        rest.insert(rest.end(), w.begin() + k + 1, w.end());
        out.c[sp.word_index(rest)] += v.c[i] * qpow;
      }
      qpow = qpow * q;
    }
  }
  return out;
}

template <class S>
Matrix<S> creation_matrix(const FockSpace& sp, int twice_m, int n) {
  if (n + 1 > sp.n_max())
    throw TruncationError("creation matrix target exceeds N_max");
  Matrix<S> m(sp.dim(n + 1), sp.dim(n));
  long off = static_cast<long>(sp.mode_pos(twice_m)) * sp.dim(n);
  for (long i = 0; i < sp.dim(n); ++i)
    m.at(off + i, i) = ScalarOps<S>::one();
  return m;
}

template <class S>
Matrix<S> annihilation_matrix(const FockSpace& sp, int twice_m, int n,
                              const S& q) {
  if (n < 1) throw StateError("annihilation matrix needs a sector n >= 1");
  Matrix<S> m(sp.dim(n - 1), sp.dim(n));
  for (long i = 0; i < sp.dim(n); ++i) {
    auto col = FockVector<S>::basis(sp, sp.word_at(n, i));
    auto res = apply_annihilation(sp, twice_m, col, q);
    for (long r = 0; r < sp.dim(n - 1); ++r)
      if (!ScalarOps<S>::is_zero(res.c[r])) m.at(r, i) = res.c[r];
  }
  return m;
}

/// ⟨w1|w2⟩ by the inversion-statistic formula: Σ over permutations σ with
/// w1[k] = w2[σ(k)] of q^{inv(σ)}.  Independent of the rewrite engine; the
/// two routes are mutual oracles.
template <class S>
S inner_product(const Word& w1, const Word& w2, const S& q) {
  if (w1.size() != w2.size()) return ScalarOps<S>::zero();
  const size_t n = w1.size();
  if (n == 0) return ScalarOps<S>::one();
  Word s1 = w1, s2 = w2;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (s1 != s2) return ScalarOps<S>::zero();
  std::vector<size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  S acc = ScalarOps<S>::zero();
  do {
    bool match = true;
    for (size_t k = 0; k < n && match; ++k)
      match = w1[k] == w2[sigma[k]];
    if (!match) continue;
    unsigned inv = 0;
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        if (sigma[a] > sigma[b]) ++inv;
    acc += scalar_pow(q, inv);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc;
}

template <class S>
Matrix<S> gram_matrix(const FockSpace& sp, int n, const S& q) {
  Matrix<S> g(sp.dim(n), sp.dim(n));
  for (long i = 0; i < sp.dim(n); ++i) {
    Word wi = sp.word_at(n, i);
    for (long j = i; j < sp.dim(n); ++j) {
      S v = inner_product(wi, sp.word_at(n, j), q);
      g.at(i, j) = v;
      g.at(j, i) = v;
    }
  }
  return g;
}

struct PositivityReport {
  int n = 0;
  long dim = 0;
  bool positive_definite = false;
  long rank = 0;
  double min_eigenvalue = 0.0;
  bool has_min_eigenvalue = false;
  std::string method;
};

/// Float-backend diagnostics (Eigen): smallest eigenvalue and singular-value
/// rank at threshold 1e-10 * max singular value.
PositivityReport positivity_float(const Matrix<double>& gram);

/// Exact-backend diagnostics: LDL^T pivots decide definiteness, exact Gauss
/// elimination decides the rank.
PositivityReport positivity_exact(const Matrix<Exact>& gram);

template <class S>
PositivityReport check_positivity(const FockSpace& sp, int n, const S& q) {
  Matrix<S> g = gram_matrix(sp, n, q);
  PositivityReport rep;
  if constexpr (ScalarOps<S>::exact)
    rep = positivity_exact(g);
  else
    rep = positivity_float(g);
  rep.n = n;
  rep.dim = sp.dim(n);
  return rep;
}

/// Net particle-number shift of a canonical polynomial; all terms must agree.
template <class S>
int particle_shift(const Poly<S>& p) {
  bool first = true;
  int shift = 0;
  for (const auto& [w, c] : p.terms()) {
    int s = 0;
    for (const Gen& g : w) s += g.kind == GenKind::Create ? 1 : -1;
    if (first) {
      shift = s;
      first = false;
    } else if (s != shift) {
      throw StateError("polynomial does not shift particle number uniformly");
    }
  }
  return shift;
}

/// Matrix of a canonical polynomial on the word basis of `source`.  Normal
/// ordering guarantees no intermediate state exceeds max(source, target), so
/// the only truncation check is on the target sector.
template <class S>
Matrix<S> operator_matrix(const FockSpace& sp, const Poly<S>& p, int source,
                          const S& q) {
  int shift = p.is_zero() ? 0 : particle_shift(p);
  int target = source + shift;
  if (target > sp.n_max())
    throw TruncationError("operator target sector " + std::to_string(target) +
                          " exceeds N_max=" + std::to_string(sp.n_max()));
  Matrix<S> m(sp.dim(target), sp.dim(source));
  if (target < 0) return m;
  for (long col = 0; col < sp.dim(source); ++col) {
    auto acc = FockVector<S>::zero(sp, target);
    for (const auto& [w, c] : p.terms()) {
      auto v = FockVector<S>::basis(sp, sp.word_at(source, col));
      bool dead = false;
      for (auto it = w.rbegin(); it != w.rend() && !dead; ++it) {
        if (it->kind == GenKind::Annihilate) {
          if (v.n == 0) {
            dead = true;
            break;
          }
          v = apply_annihilation(sp, it->twice_m, v, q);
        } else {
          v = apply_creation(sp, it->twice_m, v);
        }
        dead = v.is_zero() && v.n == 0;
      }
      if (dead || v.n != target) {
        if (!dead && v.n != target)
          throw StateError("term shift mismatch in operator_matrix");
        continue;
      }
      acc += v.scaled(c);
    }
    for (long r = 0; r < sp.dim(target); ++r)
      if (!ScalarOps<S>::is_zero(acc.c[r])) m.at(r, col) = acc.c[r];
  }
  return m;
}

}  // namespace quonlab
