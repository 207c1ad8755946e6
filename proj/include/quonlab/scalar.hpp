#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "quonlab/errors.hpp"

namespace quonlab {

/// Parse "p/q", "p", or a decimal literal into an exact rational.
/// Throws ConfigError on malformed input or zero denominator.
mpq_class parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_str(const mpq_class& r);

/// Round-to-nearest conversion (mpq_class::get_d truncates toward zero).
double rational_to_double(const mpq_class& r);

/// True when the literal uses decimal notation ('.', 'e', 'E'), which selects
/// the float backend; plain integers and "p/q" select the exact backend.
bool literal_is_decimal(const std::string& text);

/// n = square_root^2 * squarefree with squarefree square-free.
struct SquareDecomposition {
  mpz_class square_root;
  unsigned long squarefree;
};
SquareDecomposition decompose_square(const mpz_class& n);

/// Element of the real quadratic-radical ring: a finite sum
///   sum_d  c_d * sqrt(d)
/// with d a square-free positive integer and c_d rational.  Rationals embed
/// as the d = 1 component.  Closed under +, -, *; division is supported for
/// single-term divisors (all the engine ever divides by).
class Exact {
 public:
  Exact() = default;
  Exact(long v) {
    if (v != 0) terms_.emplace(1, mpq_class(v));
  }
  explicit Exact(const mpq_class& v) {
    if (v != 0) terms_.emplace(1, v);
  }

  /// sqrt of a non-negative rational, normalized so the stored radicand is a
  /// square-free integer: sqrt(p/q) = sqrt(p*q)/q.
  static Exact sqrt_rational(const mpq_class& r);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  /// The rational value; throws StateError when the value has radical parts.
  mpq_class rational() const;

  Exact operator-() const;
  Exact& operator+=(const Exact& o);
  Exact& operator-=(const Exact& o);
  friend Exact operator+(Exact a, const Exact& b) { return a += b; }
  friend Exact operator-(Exact a, const Exact& b) { return a -= b; }
  friend Exact operator*(const Exact& a, const Exact& b);
  Exact& operator*=(const Exact& o) { return *this = *this * o; }

  /// Multiplicative inverse, defined for single-term values c*sqrt(d).
  Exact inverse() const;
  friend Exact operator/(const Exact& a, const Exact& b) {
    return a * b.inverse();
  }
  Exact& operator/=(const Exact& o) { return *this = *this / o; }

  bool operator==(const Exact& o) const { return terms_ == o.terms_; }
  bool operator!=(const Exact& o) const { return !(*this == o); }

  double to_double() const;
  std::string str() const;

  const std::map<unsigned long, mpq_class>& terms() const { return terms_; }

 private:
  void add_term(unsigned long radicand, const mpq_class& coeff);
  std::map<unsigned long, mpq_class> terms_;
};

/// Backend glue: the one place that knows how to make, test and render
/// scalars of either backend.  Everything numeric is templated on S with
/// S in {double, Exact}.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static const char* backend_name() { return "float"; }
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_rational(const mpq_class& r) { return rational_to_double(r); }
  static double sqrt_rational(const mpq_class& r) {
    return std::sqrt(rational_to_double(r));
  }
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static std::string str(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
};

template <>
struct ScalarOps<Exact> {
  static constexpr bool exact = true;
  static const char* backend_name() { return "exact"; }
  static Exact zero() { return Exact(); }
  static Exact one() { return Exact(1); }
  static Exact from_long(long v) { return Exact(v); }
  static Exact from_rational(const mpq_class& r) { return Exact(r); }
  static Exact sqrt_rational(const mpq_class& r) { return Exact::sqrt_rational(r); }
  static bool is_zero(const Exact& v) { return v.is_zero(); }
  static double to_double(const Exact& v) { return v.to_double(); }
  static std::string str(const Exact& v) { return v.str(); }
};

template <class S>
S scalar_pow(const S& base, unsigned exp) {
  S acc = ScalarOps<S>::one();
  for (unsigned i = 0; i < exp; ++i) acc = acc * base;
  return acc;
}

}  // namespace quonlab
