#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quonlab/errors.hpp"
#include "quonlab/scalar.hpp"

namespace quonlab {

/// Angular-momentum projections are stored doubled so half-integer levels
/// stay exact: twice_m = 2m.
inline std::string mode_str(int twice_m) {
  if (twice_m % 2 == 0) return std::to_string(twice_m / 2);
  return std::to_string(twice_m) + "/2";
}

enum class GenKind : std::uint8_t { Create, Annihilate };

/// One creation or annihilation generator b†_m / b_m.
struct Gen {
  GenKind kind;
  int twice_m;
  friend bool operator==(const Gen&, const Gen&) = default;
};

inline Gen bd(int twice_m) { return {GenKind::Create, twice_m}; }
inline Gen bb(int twice_m) { return {GenKind::Annihilate, twice_m}; }
inline Gen gen_adjoint(Gen g) {
  return {g.kind == GenKind::Create ? GenKind::Annihilate : GenKind::Create,
          g.twice_m};
}

using GenSeq = std::vector<Gen>;

/// Canonical term order: creation modes first, then annihilation modes, each
/// compared lexicographically with modes descending; shorter prefixes first.
struct TermOrder {
  static int cmp_part(const GenSeq& a, size_t a0, size_t a1, const GenSeq& b,
                      size_t b0, size_t b1) {
    size_t la = a1 - a0, lb = b1 - b0, n = la < lb ? la : lb;
    for (size_t i = 0; i < n; ++i) {
      int ma = a[a0 + i].twice_m, mb = b[b0 + i].twice_m;
      if (ma != mb) return ma > mb ? -1 : 1;
    }
    if (la != lb) return la < lb ? -1 : 1;
    return 0;
  }
  static size_t creation_len(const GenSeq& w) {
    size_t k = 0;
    while (k < w.size() && w[k].kind == GenKind::Create) ++k;
    return k;
  }
  bool operator()(const GenSeq& a, const GenSeq& b) const {
    size_t ca = creation_len(a), cb = creation_len(b);
    int c = cmp_part(a, 0, ca, b, 0, cb);
    if (c != 0) return c < 0;
    return cmp_part(a, ca, a.size(), b, cb, b.size()) < 0;
  }
};

inline bool is_normal_ordered(const GenSeq& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].kind == GenKind::Annihilate && w[i + 1].kind == GenKind::Create)
      return false;
  return true;
}

/// Finite sum of scalar-weighted generator words, kept in normal-ordered
/// canonical form (every creation precedes every annihilation, zero
/// coefficients dropped).  Unique for fixed q.
template <class S>
class Poly {
 public:
  using Terms = std::map<GenSeq, S, TermOrder>;

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(ScalarOps<S>::one()); }
  static Poly constant(const S& c) {
    Poly p;
    p.add_term(GenSeq{}, c);
    return p;
  }
  static Poly generator(Gen g) {
    Poly p;
    p.add_term(GenSeq{g}, ScalarOps<S>::one());
    return p;
  }
  static Poly creation(int twice_m) { return generator(bd(twice_m)); }
  static Poly annihilation(int twice_m) { return generator(bb(twice_m)); }

  /// Insert an already normal-ordered term.
  void add_term(const GenSeq& word, const S& coeff) {
    if (ScalarOps<S>::is_zero(coeff)) return;
    auto it = terms_.find(word);
    if (it == terms_.end()) {
      terms_.emplace(word, coeff);
      return;
    }
    it->second += coeff;
    if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly scaled(const S& s) const {
    Poly out;
    for (const auto& [w, c] : terms_) out.add_term(w, c * s);
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  S coeff(const GenSeq& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ScalarOps<S>::zero() : it->second;
  }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  /// Text form used by golden tests: `coeff * bd(m1) ... b(mk)` per term,
  /// canonical term order, " + " separated, bare coeff for the constant term.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (!first) out += " + ";
      out += ScalarOps<S>::str(c);
      for (const Gen& g : w) {
        out += g.kind == GenKind::Create ? " bd(" : " b(";
        out += mode_str(g.twice_m) + ")";
      }
      first = false;
    }
    return out;
  }

 private:
  Terms terms_;
};

/// Normal-order coeff * word under the rewrite b_m b†_m' -> q b†_m' b_m +
/// δ_{m,m'}.  Each step removes one annihilation-before-creation inversion
/// (or two generators), so the rewriting terminates.
template <class S>
Poly<S> normal_order(const S& coeff, GenSeq word, const S& q) {
  Poly<S> out;
  std::vector<std::pair<S, GenSeq>> work;
  work.emplace_back(coeff, std::move(word));
  while (!work.empty()) {
    auto [c, w] = std::move(work.back());
    work.pop_back();
    if (ScalarOps<S>::is_zero(c)) continue;
    size_t i = 0;
    bool found = false;
    for (; i + 1 < w.size(); ++i) {
      if (w[i].kind == GenKind::Annihilate &&
          w[i + 1].kind == GenKind::Create) {
        found = true;
        break;
      }
    }
    if (!found) {
      out.add_term(w, c);
      continue;
    }
    if (w[i].twice_m == w[i + 1].twice_m) {
      GenSeq contracted;
      contracted.reserve(w.size() - 2);
      contracted.insert(contracted.end(), w.begin(), w.begin() + i);
      contracted.insert(contracted.end(), w.begin() + i + 2, w.end());
      work.emplace_back(c, std::move(contracted));
    }
    std::swap(w[i], w[i + 1]);
    work.emplace_back(c * q, std::move(w));
  }
  return out;
}

template <class S>
Poly<S> normal_order(const Poly<S>& p, const S& q) {
  // already canonical; provided for symmetry with raw-word input
  (void)q;
  return p;
}

/// Product in the quon algebra: concatenate words termwise, then rewrite.
template <class S>
Poly<S> multiply(const Poly<S>& a, const Poly<S>& b, const S& q) {
  Poly<S> out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      GenSeq w;
      w.reserve(wa.size() + wb.size());
      w.insert(w.end(), wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      out += normal_order(ca * cb, std::move(w), q);
    }
  }
  return out;
}

/// a·b − q·b·a, the deformed commutator of the defining relation.
template <class S>
Poly<S> q_mutator(const Poly<S>& a, const Poly<S>& b, const S& q) {
  return multiply(a, b, q) - multiply(b, a, q).scaled(q);
}

/// Ordinary commutator a·b − b·a.
template <class S>
Poly<S> commutator(const Poly<S>& a, const Poly<S>& b, const S& q) {
  return multiply(a, b, q) - multiply(b, a, q);
}

/// Reverses each word and swaps creation <-> annihilation; scalars are real,
/// so conjugation is the identity.  The adjoint of a normal word is normal.
template <class S>
Poly<S> adjoint(const Poly<S>& p) {
  Poly<S> out;
  for (const auto& [w, c] : p.terms()) {
    GenSeq r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      r.push_back(gen_adjoint(*it));
    out.add_term(r, c);
  }
  return out;
}

/// ⟨0|p|0⟩: the constant term of the canonical form.
template <class S>
S vacuum_expectation(const Poly<S>& p) {
  return p.coeff(GenSeq{});
}

}  // namespace quonlab
