#include <doctest.h>

#include <random>

#include "quonlab/algebra.hpp"

using namespace quonlab;
using EP = Poly<Exact>;

namespace {

Exact q_half() { return Exact(mpq_class(1, 2)); }

/// Rewrites picking a random inversion at each step instead of the leftmost;
/// confluence means the result must match the engine regardless.
Poly<Exact> random_order_rewrite(Exact coeff, GenSeq word, const Exact& q,
                                 std::mt19937& rng) {
  Poly<Exact> out;
  std::vector<std::pair<Exact, GenSeq>> work;
  work.emplace_back(std::move(coeff), std::move(word));
  while (!work.empty()) {
    auto [c, w] = work.back();
    work.pop_back();
    if (c.is_zero()) continue;
    std::vector<size_t> spots;
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].kind == GenKind::Annihilate && w[i + 1].kind == GenKind::Create)
        spots.push_back(i);
    if (spots.empty()) {
      out.add_term(w, c);
      continue;
    }
    size_t i = spots[rng() % spots.size()];
    if (w[i].twice_m == w[i + 1].twice_m) {
      GenSeq contracted(w.begin(), w.begin() + i);
      contracted.insert(contracted.end(), w.begin() + i + 2, w.end());
      work.emplace_back(c, std::move(contracted));
    }
    std::swap(w[i], w[i + 1]);
    work.emplace_back(c * q, std::move(w));
  }
  return out;
}

GenSeq random_word(std::mt19937& rng, size_t len) {
  GenSeq w;
  for (size_t i = 0; i < len; ++i) {
    int tm = (rng() % 2) ? 1 : -1;
    w.push_back((rng() % 2) ? bd(tm) : bb(tm));
  }
  return w;
}

}  // namespace

TEST_CASE("mode labels") {
  CHECK(mode_str(1) == "1/2");
  CHECK(mode_str(-1) == "-1/2");
  CHECK(mode_str(2) == "1");
  CHECK(mode_str(0) == "0");
  CHECK(mode_str(-4) == "-2");
}

TEST_CASE("defining relation") {
  Exact q = q_half();
  // b_m b†_m = q b†_m b_m + 1
  auto lhs = multiply(EP::annihilation(1), EP::creation(1), q);
  EP rhs = EP::one();
  rhs += multiply(EP::creation(1), EP::annihilation(1), q).scaled(q);
  CHECK(lhs == rhs);

  // distinct modes: no contraction
  auto cross = multiply(EP::annihilation(1), EP::creation(-1), q);
  CHECK(cross ==
        multiply(EP::creation(-1), EP::annihilation(1), q).scaled(q));

  // as a deformed commutator: qmut[b(m), bd(m')] == delta
  CHECK(q_mutator(EP::annihilation(1), EP::creation(1), q) == EP::one());
  CHECK(q_mutator(EP::annihilation(1), EP::creation(-1), q).is_zero());
}

TEST_CASE("q = 0 collapse") {
  Exact q0;
  CHECK(multiply(EP::annihilation(1), EP::creation(1), q0) == EP::one());
  CHECK(multiply(EP::annihilation(1), EP::creation(-1), q0).is_zero());
}

TEST_CASE("frozen canonical form of b b b† b†") {
  // b_m b_m b†_m b†_m at q = 1/2:
  //   (1+q) + q(1+q)^2 b†b + q^4 b†b† bb = 3/2 + 9/8 b†b + 1/16 b†b†bb
  Exact q = q_half();
  GenSeq w = {bb(1), bb(1), bd(1), bd(1)};
  auto p = normal_order(Exact(1), w, q);
  CHECK(p.size() == 3);
  CHECK(p.coeff({}) == Exact(mpq_class(3, 2)));
  CHECK(p.coeff({bd(1), bb(1)}) == Exact(mpq_class(9, 8)));
  CHECK(p.coeff({bd(1), bd(1), bb(1), bb(1)}) == Exact(mpq_class(1, 16)));
  CHECK(p.str() == "3/2 + 9/8 bd(1/2) b(1/2) + 1/16 bd(1/2) bd(1/2) b(1/2) b(1/2)");
}

TEST_CASE("rewrite order does not matter") {
  std::mt19937 rng(20260814);
  Exact qs[] = {q_half(), Exact(mpq_class(-3, 7)), Exact(0)};
  for (int trial = 0; trial < 200; ++trial) {
    GenSeq w = random_word(rng, 2 + rng() % 5);
    const Exact& q = qs[trial % 3];
    auto reference = normal_order(Exact(1), w, q);
    auto shuffled = random_order_rewrite(Exact(1), w, q, rng);
    CHECK(reference == shuffled);
  }
}

TEST_CASE("no relations among creation words") {
  // b†_a b†_b and b†_b b†_a stay distinct terms
  Exact q = q_half();
  auto ab = multiply(EP::creation(1), EP::creation(-1), q);
  auto ba = multiply(EP::creation(-1), EP::creation(1), q);
  CHECK(ab != ba);
  CHECK(ab.size() == 1);
  CHECK(!(ab - ba).is_zero());
}

TEST_CASE("adjoint is an anti-automorphism and involution") {
  std::mt19937 rng(7);
  Exact q = q_half();
  for (int trial = 0; trial < 50; ++trial) {
    auto a = normal_order(Exact(1), random_word(rng, 1 + rng() % 4), q);
    auto b = normal_order(Exact(1), random_word(rng, 1 + rng() % 4), q);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(multiply(a, b, q)) == multiply(adjoint(b), adjoint(a), q));
  }
  CHECK(adjoint(EP::creation(1)) == EP::annihilation(1));
}

TEST_CASE("vacuum expectation extracts the constant term") {
  Exact q = q_half();
  auto p = multiply(EP::annihilation(1), EP::creation(1), q);
  CHECK(vacuum_expectation(p) == Exact(1));
  CHECK(vacuum_expectation(EP::creation(1)).is_zero());
  // <0| b b b† b† |0> = 1 + q at q=1/2
  auto two = multiply(multiply(EP::annihilation(1), EP::annihilation(1), q),
                      multiply(EP::creation(1), EP::creation(1), q), q);
  CHECK(vacuum_expectation(two) == Exact(mpq_class(3, 2)));
}

TEST_CASE("float backend agrees with exact on the defining relation") {
  double q = 0.37;
  auto lhs = multiply(Poly<double>::annihilation(1), Poly<double>::creation(1), q);
  CHECK(lhs.coeff({}) == 1.0);
  CHECK(lhs.coeff({bd(1), bb(1)}) == doctest::Approx(q).epsilon(1e-15));
}
