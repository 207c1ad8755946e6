#include "quonlab/clebsch.hpp"

#include <algorithm>

#include "quonlab/errors.hpp"

namespace quonlab {

namespace {

const mpz_class& fact(int n) {
  static std::vector<mpz_class> cache = {1};
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<int>(cache.size()));
  return cache[n];
}

void check_level(int tj, int tm) {
  if (tj < 0) throw ConfigError("angular momentum level must be >= 0");
  if (((tj - tm) & 1) != 0)
    throw ConfigError("projection must have the same parity as the level");
}

}  // namespace

SignSqrt clebsch_gordan_exact(int tj1, int tm1, int tj2, int tm2, int tJ,
                              int tM) {
  check_level(tj1, tm1);
  check_level(tj2, tm2);
  check_level(tJ, tM);

  if (tm1 + tm2 != tM) return {};
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ)
    return {};
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return {};
  if (((tj1 + tj2 + tJ) & 1) != 0) return {};  // non-integral triangle

  // prefactor under the square root, all-rational
  mpq_class pre = tJ + 1;
  pre *= fact((tJ + tj1 - tj2) / 2);
  pre *= fact((tJ - tj1 + tj2) / 2);
  pre *= fact((tj1 + tj2 - tJ) / 2);
  pre /= fact((tj1 + tj2 + tJ) / 2 + 1);
  pre *= fact((tJ + tM) / 2);
  pre *= fact((tJ - tM) / 2);
  pre *= fact((tj1 - tm1) / 2);
  pre *= fact((tj1 + tm1) / 2);
  pre *= fact((tj2 - tm2) / 2);
  pre *= fact((tj2 + tm2) / 2);

  const int k_min =
      std::max({0, -(tJ - tj2 + tm1) / 2, -(tJ - tj1 - tm2) / 2});
  const int k_max = std::min(
      {(tj1 + tj2 - tJ) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});

  mpq_class sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    mpz_class den = fact(k);
    den *= fact((tj1 + tj2 - tJ) / 2 - k);
    den *= fact((tj1 - tm1) / 2 - k);
    den *= fact((tj2 + tm2) / 2 - k);
    den *= fact((tJ - tj1 - tm2) / 2 + k);
    den *= fact((tJ - tj2 + tm1) / 2 + k);
    mpq_class term(mpz_class((k & 1) ? -1 : 1), den);
    term.canonicalize();
    sum += term;
  }
  if (sum == 0) return {};

  SignSqrt out;
  out.sign = sgn(sum) > 0 ? 1 : -1;
  out.radicand = sum * sum * pre;
  out.radicand.canonicalize();
  return out;
}

std::vector<CGEntry> cg_table(int tj1, int tj2) {
  std::vector<CGEntry> out;
  for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
    for (int tM = tJ; tM >= -tJ; tM -= 2) {
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
        int tm2 = tM - tm1;
        if (std::abs(tm2) > tj2) continue;
        auto v = clebsch_gordan_exact(tj1, tm1, tj2, tm2, tJ, tM);
        if (!v.is_zero()) out.push_back({tJ, tM, tm1, tm2, v});
      }
    }
  }
  return out;
}

}  // namespace quonlab
