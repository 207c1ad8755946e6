#pragma once

#include <cmath>
#include <vector>

#include "quonlab/scalar.hpp"

namespace quonlab {

/// Exact value of the form sign * sqrt(radicand), radicand rational >= 0.
struct SignSqrt {
  int sign = 0;
  mpq_class radicand = 0;

  bool is_zero() const { return sign == 0; }
  double to_double() const { return sign * std::sqrt(rational_to_double(radicand)); }
};

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention.  All angular
/// momenta are passed doubled so half-integers stay integral.  Arguments
/// violating a selection rule give a zero value; malformed arguments
/// (negative j, or m not of the same parity as j) throw ConfigError.
SignSqrt clebsch_gordan_exact(int tj1, int tm1, int tj2, int tm2, int tJ,
                              int tM);

struct CGEntry {
  int tJ, tM, tm1, tm2;
  SignSqrt value;
};

/// All nonzero coefficients for coupling levels tj1 x tj2.
std::vector<CGEntry> cg_table(int tj1, int tj2);

template <class S>
S cg_value(const SignSqrt& v) {
  if (v.sign == 0) return ScalarOps<S>::zero();
  S root = ScalarOps<S>::sqrt_rational(v.radicand);
  return v.sign < 0 ? -root : root;
}

}  // namespace quonlab
