#include "doctest.h"

#include <random>
#include <set>

#include "classprob/errors.hpp"
#include "classprob/exact.hpp"

using namespace classprob;

namespace {

// Two rolls of a die: case = 6 * (first - 1) + (second - 1).
FiniteEventSpace two_dice() {
  FiniteEventSpace space(36);
  space.add_event("six on roll 1", [](std::size_t c) { return c / 6 == 5; });
  space.add_event("six on roll 2", [](std::size_t c) { return c % 6 == 5; });
  return space;
}

// Gaussian elimination over the rationals; the matrix is assumed regular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (a[pivot][col].sign() == 0) ++pivot;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].sign() == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Probability that A collects everything, from the absorbing chain on A's
// holdings 0..total: h(i) = p h(i+1) + q h(i-1), h(0) = 0, h(total) = 1.
Rational ruin_by_absorbing_chain(int ca, int cb, const Rational& p) {
  const int total = ca + cb;
  const std::size_t inner = static_cast<std::size_t>(total - 1);
  std::vector<std::vector<Rational>> a(inner, std::vector<Rational>(inner));
  std::vector<Rational> rhs(inner);
  for (std::size_t i = 0; i < inner; ++i) {
    const int state = static_cast<int>(i) + 1;
    a[i][i] = 1;
    if (state + 1 == total)
      rhs[i] += p;
    else
      a[i][i + 1] -= p;
    if (state - 1 > 0) a[i][i - 1] -= Rational(1) - p;
  }
  return solve_exact(a, rhs)[static_cast<std::size_t>(ca - 1)];
}

// Plays out every sequence of `rounds` fair rounds and credits A when A's
// wins reach `need_a` before B's reach `need_b`.
Rational points_brute_force(int need_a, int need_b) {
  const int rounds = need_a + need_b - 1;
  long favourable = 0;
  for (long mask = 0; mask < (1L << rounds); ++mask) {
    int wa = 0, wb = 0;
    for (int r = 0; r < rounds && wa < need_a && wb < need_b; ++r) ((mask >> r) & 1) ? ++wa : ++wb;
    if (wa == need_a) ++favourable;
  }
  return Rational(favourable, 1L << rounds);
}

}  // namespace

TEST_CASE("classical probability") {
  CHECK(classical_probability(25, 216) == Rational(25, 216));
  CHECK(classical_probability(0, 6) == Rational(0));
  CHECK(classical_probability(6, 6) == Rational(1));
  CHECK_THROWS_AS(classical_probability(7, 6), DomainError);
  CHECK_THROWS_AS(classical_probability(0, 0), DomainError);
}

TEST_CASE("union of two sixes is 11/36") {
  auto space = two_dice();
  CHECK(union_probability(space, {"six on roll 1", "six on roll 2"}) == Rational(11, 36));
  CHECK(space.probability("six on roll 1") == Rational(1, 6));
}

TEST_CASE("union of disjoint events adds") {
  FiniteEventSpace space(10);
  space.add_event("red", std::vector<std::size_t>{0, 1, 2});
  space.add_event("blue", std::vector<std::size_t>{5, 6});
  CHECK(union_probability(space, {"red", "blue"}) == Rational(5, 10));
}

TEST_CASE("three events covering N=8") {
  FiniteEventSpace space(8);
  space.add_event("A", std::vector<std::size_t>{0, 1, 2, 3});
  space.add_event("B", std::vector<std::size_t>{2, 3, 4, 5});
  space.add_event("C", std::vector<std::size_t>{5, 6, 7, 0});
  CHECK(union_probability(space, {"A", "B", "C"}) == Rational(1));
}

TEST_CASE("union errors") {
  auto space = two_dice();
  CHECK_THROWS_AS(union_probability(space, {"six on roll 1", "nope"}), LookupError);
  CHECK_THROWS_AS(union_probability(space, {}), DomainError);
  CHECK_THROWS_AS(space.add_event("six on roll 1", std::vector<std::size_t>{}), DomainError);
  CHECK_THROWS_AS(space.add_event("out", std::vector<std::size_t>{36}), DomainError);
}

TEST_CASE("inclusion-exclusion equals direct counting on random families") {
  std::mt19937_64 gen(20240917);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      FiniteEventSpace space(n);
      const int k = 1 + static_cast<int>(gen() % 4);
      std::vector<std::string> names;
      std::set<std::size_t> direct;
      for (int e = 0; e < k; ++e) {
        std::vector<std::size_t> cases;
        for (std::size_t c = 0; c < n; ++c)
          if (gen() % 3 == 0) cases.push_back(c);
        names.push_back("E" + std::to_string(e));
        space.add_event(names.back(), cases);
        direct.insert(cases.begin(), cases.end());
      }
      CHECK(union_probability(space, names) ==
            Rational(static_cast<long>(direct.size()), static_cast<long>(n)));
    }
  }
}

TEST_CASE("multiplication theorem on the batch example") {
  // 100 articles: 96 standard, 72 of those of the best quality.
  FiniteEventSpace space(100);
  space.add_event("standard", [](std::size_t c) { return c < 96; });
  space.add_event("best", [](std::size_t c) { return c < 72; });
  space.add_event("both", [](std::size_t c) { return c < 72; });
  const Rational cond = conditional_probability(space, "best", "standard");
  CHECK(cond == Rational(3, 4));
  CHECK(space.probability("standard") == Rational(96, 100));
  CHECK(space.probability("standard") * cond == Rational(72, 100));
  CHECK(space.probability("both") == space.probability("standard") * cond);
}

TEST_CASE("conditional probability on containing and independent events") {
  auto space = two_dice();
  space.add_event("first even", [](std::size_t c) { return (c / 6 + 1) % 2 == 0; });
  space.add_event("first at least 5", [](std::size_t c) { return c / 6 + 1 >= 5; });
  CHECK(conditional_probability(space, "first at least 5", "six on roll 1") == Rational(1));
  // Coordinates of the product space are independent.
  CHECK(conditional_probability(space, "six on roll 2", "first even") == Rational(1, 6));
  CHECK(conditional_probability(space, "first even", "six on roll 2") ==
        space.probability("first even"));
  space.add_event("empty", std::vector<std::size_t>{});
  CHECK_THROWS_AS(conditional_probability(space, "first even", "empty"), UndefinedError);
}

TEST_CASE("total probability and Bayes for three urns") {
  const Rational third(1, 3);
  CauseSystem urns({third, third, third}, {Rational(1, 3), Rational(2, 3), Rational(3, 8)});
  CHECK(total_probability(urns) == Rational(11, 24));
  CHECK(Rational(11, 24).to_fixed(3) == "0.458");
  auto post = bayes_posteriors(urns);
  CHECK(post == std::vector<Rational>{Rational(8, 33), Rational(16, 33), Rational(9, 33)});

  CauseSystem sure({third, third, third}, {1, 1, 1});
  CHECK(total_probability(sure) == Rational(1));
  CauseSystem high({third, third, third}, {Rational(99, 100), Rational(99, 100), Rational(99, 100)});
  CHECK(total_probability(high) == Rational(99, 100));
}

TEST_CASE("posteriors: no information, zero likelihood, normalization") {
  CauseSystem flat({Rational(1, 4), Rational(3, 4)}, {Rational(1, 2), Rational(1, 2)});
  CHECK(bayes_posteriors(flat) == flat.priors());
  CauseSystem zero({Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1, 5)});
  CHECK(bayes_posteriors(zero)[0] == Rational(0));
  CauseSystem none({Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(0)});
  CHECK_THROWS_AS(bayes_posteriors(none), UndefinedError);
  CHECK_THROWS_AS(CauseSystem({Rational(1, 2)}, {Rational(1)}), DomainError);
  CHECK_THROWS_AS(CauseSystem({Rational(1)}, {Rational(3, 2)}), DomainError);

  std::mt19937_64 gen(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + gen() % 6;
    std::vector<Rational> raw, like;
    Rational sum;
    for (std::size_t i = 0; i < k; ++i) {
      raw.emplace_back(static_cast<long>(1 + gen() % 20));
      sum += raw.back();
      like.emplace_back(static_cast<long>(gen() % 11), 10L);
    }
    for (auto& r : raw) r /= sum;
    like[0] = Rational(1, 7);  // total probability stays positive
    auto post = bayes_posteriors(CauseSystem(raw, like));
    Rational total;
    for (const auto& p : post) total += p;
    CHECK(total == Rational(1));
  }
}

TEST_CASE("dice sum counts") {
  CHECK(dice_sum_count(3, 6, 9) == 25);
  CHECK(dice_sum_count(3, 6, 10) == 27);
  CHECK(dice_sum_count(3, 6, 11) == 27);
  CHECK(dice_sum_count(3, 6, 12) == 25);
  CHECK(dice_sum_count(3, 6, 14) == 15);
  CHECK(dice_sum_count(2, 6, 12) == 1);
  CHECK(dice_sum_count(2, 6, 11) == 2);
  CHECK(dice_sum_count(3, 6, 2) == 0);
  CHECK(dice_sum_count(3, 6, 19) == 0);
  CHECK_THROWS_AS(dice_sum_count(0, 6, 3), DomainError);
  CHECK_THROWS_AS(dice_sum_count(2, 1, 2), DomainError);
}

TEST_CASE("dice sum counts: enumeration, totals and symmetry") {
  for (int d = 1; d <= 4; ++d) {
    for (int f = 2; f <= 6; ++f) {
      std::vector<long> brute(static_cast<std::size_t>(d * f) + 1, 0);
      long outcomes = 1;
      for (int i = 0; i < d; ++i) outcomes *= f;
      for (long o = 0; o < outcomes; ++o) {
        long s = 0, rest = o;
        for (int i = 0; i < d; ++i, rest /= f) s += rest % f + 1;
        ++brute[static_cast<std::size_t>(s)];
      }
      BigInt total = 0;
      for (long s = 0; s <= d * f; ++s) {
        CHECK(dice_sum_count(d, f, s) == brute[static_cast<std::size_t>(s)]);
        CHECK(dice_sum_count(d, f, s) == dice_sum_count(d, f, d * (f + 1) - s));
        total += dice_sum_count(d, f, s);
      }
      CHECK(total == outcomes);
    }
  }
}

TEST_CASE("problem of points") {
  CHECK(points_division(1, 2, Rational(1, 2)) == Rational(3, 4));
  CHECK(points_division(3, 3, Rational(1, 2)) == Rational(1, 2));
  CHECK(points_division(2, 3, Rational(1, 2)) == points_brute_force(2, 3));
  CHECK(points_brute_force(2, 3) == Rational(11, 16));
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) CHECK(points_division(a, b, Rational(1, 2)) == points_brute_force(a, b));
  CHECK_THROWS_AS(points_division(0, 2, Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(points_division(1, 2, Rational(1)), DomainError);
}

TEST_CASE("problem of points complement identity") {
  for (const Rational& p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)})
    for (int a = 1; a <= 6; ++a)
      for (int b = 1; b <= 6; ++b)
        CHECK(points_division(a, b, p) + points_division(b, a, Rational(1) - p) == Rational(1));
}

TEST_CASE("gambler's ruin with conditioned transfers") {
  // 15 of 216 casts give 14 points, 27 give 11; other casts transfer nothing.
  const Rational pa(15, 42), pb(27, 42);
  CHECK(pa == Rational(5, 14));
  auto r = ruin_chances(12, 12, pa, pb);
  CHECK(r.a + r.b == Rational(1));
  CHECK(r.a / r.b == pow(Rational(5), 12) / pow(Rational(9), 12));
  auto fair = ruin_chances(1, 1, Rational(1, 2), Rational(1, 2));
  CHECK(fair.a == Rational(1, 2));
  CHECK(ruin_chances(2, 1, Rational(1, 2), Rational(1, 2)).a == Rational(2, 3));
  CHECK_THROWS_AS(ruin_chances(1, 1, Rational(0), Rational(1)), DomainError);
  CHECK_THROWS_AS(ruin_chances(1, 1, Rational(1, 3), Rational(1, 3)), DomainError);
}

TEST_CASE("gambler's ruin matches the absorbing chain") {
  for (const Rational& p : {Rational(1, 2), Rational(5, 14), Rational(2, 3)})
    for (int ca = 1; ca <= 5; ++ca)
      for (int cb = 1; cb <= 5; ++cb) {
        auto r = ruin_chances(ca, cb, p, Rational(1) - p);
        CHECK(r.a == ruin_by_absorbing_chain(ca, cb, p));
        CHECK(r.a + r.b == Rational(1));
      }
}

TEST_CASE("draw without replacement") {
  // Enumerate all C(12, 7) draws of items 0..11 where items 0..3 are marked.
  long draws = 0, hits = 0;
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    if (__builtin_popcount(mask) != 7) continue;
    ++draws;
    if (__builtin_popcount(mask & 0xFu) == 3) ++hits;
  }
  CHECK(draws == 792);
  CHECK(huygens_draw(12, 4, 7, 3) == Rational(hits, draws));
  CHECK(huygens_draw(12, 4, 7, 3) == Rational(35, 99));
  CHECK(huygens_draw(9, 4, 9, 4) == Rational(1));
  CHECK(huygens_draw(10, 0, 4, 0) == Rational(1));
  CHECK_THROWS_AS(huygens_draw(10, 3, 4, 4), DomainError);
  CHECK_THROWS_AS(huygens_draw(5, 6, 2, 1), DomainError);
}

TEST_CASE("de Mere") {
  auto [p1, p2] = de_mere();
  CHECK(p1 == Rational(671, 1296));
  CHECK(p2 == Rational(1) - pow(Rational(35, 36), 24));
  CHECK(p1.to_fixed(3) == "0.518");
  // 1 - (35/36)^24 = 0.49140; the commonly printed 0.492 is a rounding slip.
  CHECK(p2.to_fixed(5) == "0.49140");
  CHECK(p2.to_fixed(3) == "0.491");
  CHECK(p1 > Rational(1, 2));
  CHECK(p2 < Rational(1, 2));
  CHECK((p1 - p2).to_fixed(3) == "0.026");
}

TEST_CASE("Poisson's urn is always one half") {
  for (long n : {1L, 2L, 8L, 1000L}) CHECK(poisson_urn(n) == Rational(1, 2));
  CHECK_THROWS_AS(poisson_urn(0), DomainError);
}
