#include "quonlab/scalar.hpp"

#include <cctype>
#include <numeric>

namespace quonlab {

bool literal_is_decimal(const std::string& text) {
  return text.find_first_of(".eE") != std::string::npos;
}

namespace {

// strict base-10 integer (GMP's string constructors auto-detect octal/hex)
mpz_class parse_integer(std::string t, const std::string& original) {
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("malformed numeric literal '" + original + "'");
  mpz_class v(t, 10);
  return neg ? mpz_class(-v) : v;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw ConfigError("empty numeric literal");
  if (literal_is_decimal(text)) {
    // decimal via exact base-10 route: d.ddd[e±k] -> integer * 10^shift
    std::string t = text;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
      mpz_class e = parse_integer(t.substr(epos + 1), text);
      if (!e.fits_slong_p())
        throw ConfigError("exponent out of range in '" + text + "'");
      exp10 = e.get_si();
      t = t.substr(0, epos);
    }
    auto dot = t.find('.');
    std::string digits =
        dot == std::string::npos ? t : t.substr(0, dot) + t.substr(dot + 1);
    long frac = dot == std::string::npos
                    ? 0
                    : static_cast<long>(t.size() - dot - 1);
    mpq_class r(parse_integer(digits, text), 1);
    long shift = exp10 - frac;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10,
                  static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
      r *= p10;
    else
      r /= p10;
    r.canonicalize();
    return neg ? mpq_class(-r) : r;
  }
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    mpq_class r(parse_integer(text, text));
    r.canonicalize();
    return r;
  }
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

std::string rational_str(const mpq_class& r) {
  return r.get_str();
}

double rational_to_double(const mpq_class& r) {
  // Exact for operands below 2^53; the division then rounds to nearest.
  return r.get_num().get_d() / r.get_den().get_d();
}

SquareDecomposition decompose_square(const mpz_class& n) {
  if (n <= 0) throw StateError("decompose_square requires a positive integer");
  mpz_class rest = n;
  mpz_class root = 1;
  unsigned long squarefree = 1;
  for (unsigned long p = 2; mpz_class(p) * p <= rest; ++p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i + 1 < e; i += 2) root *= p;
    if (e % 2) squarefree *= p;
  }
  // rest is now 1 or a prime
  if (rest > 1) {
    if (!rest.fits_ulong_p())
      throw StateError("radicand exceeds supported range");
    squarefree *= rest.get_ui();
  }
  return {root, squarefree};
}

Exact Exact::sqrt_rational(const mpq_class& r) {
  if (r < 0) throw StateError("sqrt of a negative rational");
  if (r == 0) return Exact();
  mpz_class n = r.get_num() * r.get_den();
  auto dec = decompose_square(n);
  mpq_class coeff(dec.square_root, r.get_den());
  coeff.canonicalize();
  Exact out;
  out.terms_.emplace(dec.squarefree, coeff);
  return out;
}

mpq_class Exact::rational() const {
  if (terms_.empty()) return mpq_class(0);
  if (!is_rational()) throw StateError("scalar has radical parts: " + str());
  return terms_.begin()->second;
}

void Exact::add_term(unsigned long radicand, const mpq_class& coeff) {
  auto it = terms_.find(radicand);
  if (it == terms_.end()) {
    if (coeff != 0) terms_.emplace(radicand, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

Exact Exact::operator-() const {
  Exact out;
  for (const auto& [d, c] : terms_) out.terms_.emplace(d, mpq_class(-c));
  return out;
}

Exact& Exact::operator+=(const Exact& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

Exact& Exact::operator-=(const Exact& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, mpq_class(-c));
  return *this;
}

Exact operator*(const Exact& a, const Exact& b) {
  Exact out;
  for (const auto& [d1, c1] : a.terms_) {
    for (const auto& [d2, c2] : b.terms_) {
      // sqrt(d1)*sqrt(d2) = g*sqrt(d1*d2/g^2) with g = gcd(d1,d2); both
      // radicands square-free, so the reduced radicand is square-free too.
      unsigned long g = std::gcd(d1, d2);
      unsigned long d = (d1 / g) * (d2 / g);
      out.add_term(d, c1 * c2 * mpq_class(static_cast<long>(g)));
    }
  }
  return out;
}

Exact Exact::inverse() const {
  if (terms_.empty()) throw StateError("division by zero scalar");
  if (terms_.size() != 1)
    throw StateError("division by a multi-radical scalar is unsupported: " +
                     str());
  auto [d, c] = *terms_.begin();
  // 1/(c*sqrt(d)) = sqrt(d)/(c*d)
  Exact out;
  out.terms_.emplace(d, mpq_class(1) / (c * mpq_class(static_cast<long>(d))));
  return out;
}

double Exact::to_double() const {
  double acc = 0.0;
  for (const auto& [d, c] : terms_)
    acc += rational_to_double(c) * std::sqrt(static_cast<double>(d));
  return acc;
}

std::string Exact::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    mpq_class coeff = c;
    if (!first) {
      out += (coeff < 0) ? " - " : " + ";
      if (coeff < 0) coeff = -coeff;
    }
    out += rational_str(coeff);
    if (d != 1) out += "*sqrt(" + std::to_string(d) + ")";
    first = false;
  }
  return out;
}

}  // namespace quonlab
