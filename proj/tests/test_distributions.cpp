#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "classprob/distributions.hpp"
#include "classprob/errors.hpp"
#include "classprob/quadrature.hpp"

using namespace classprob;
using doctest::Approx;

namespace {

double erf_cdf(double z) { return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2)); }

std::vector<Distribution> all_families() {
  // Triangle through (-1, 0), (0, 1), (1, 0) on a grid.
  std::vector<double> xs, ys;
  for (int i = -10; i <= 10; ++i) {
    xs.push_back(i / 10.0);
    ys.push_back(1.0 - std::fabs(i / 10.0));
  }
  return {Distribution::uniform(2.0),
          Distribution::triangular(1.5),
          Distribution::binomial(12, Rational(1, 3)),
          Distribution::poisson(3.0),
          Distribution::hypergeometric(12, 4, 7),
          Distribution::normal(1.0, 2.0),
          Distribution::half_cauchy(),
          Distribution::empirical_grid(xs, ys)};
}

}  // namespace

TEST_CASE("binomial mass is exact") {
  auto b = Distribution::binomial(4, Rational(1, 6));
  CHECK(exact_mass(b, 2) == Rational(25, 216));
  CHECK(mass_or_density(b, 2.0) == Approx(25.0 / 216.0).epsilon(1e-15));
  CHECK(mass_or_density(b, 5.0) == 0.0);
  CHECK_THROWS_AS(mass_or_density(b, 1.5), DomainError);
}

TEST_CASE("continuous densities at reference points") {
  CHECK(mass_or_density(Distribution::normal(0, 1), 0.0) ==
        Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
  auto t = Distribution::triangular(2.0);
  CHECK(mass_or_density(t, 0.0) == Approx(0.5));
  CHECK(mass_or_density(t, 2.0) == 0.0);
  CHECK(mass_or_density(t, -2.0) == 0.0);
  // The uniform on [-a, a] integrates to one with density 1/(2a).
  CHECK(mass_or_density(Distribution::uniform(2.0), 0.3) == Approx(0.25));
  CHECK(mass_or_density(Distribution::half_cauchy(), 0.0) == Approx(2.0 / std::numbers::pi));
  CHECK(mass_or_density(Distribution::half_cauchy(), -1.0) == 0.0);
}

TEST_CASE("normal table against erf") {
  CHECK(std::fabs(normal_table(3.0) - 0.49865) < 5e-5);
  for (double z = -6.0; z <= 6.0; z += 0.37) {
    CHECK(std::fabs(standard_normal_cdf(z) - erf_cdf(z)) < 1e-10);
    CHECK(std::fabs(normal_table(z) - 0.5 * std::erf(z / std::numbers::sqrt2)) < 1e-10);
  }
  CHECK(standard_normal_cdf(60.0) == 1.0);
  CHECK(standard_normal_cdf(-INFINITY) == 0.0);
}

TEST_CASE("poisson upper tail for the exchange scenario") {
  auto p = Distribution::poisson(3.0);
  const double oracle = 1.0 - std::exp(-3.0) * (1.0 + 3.0 + 4.5 + 4.5);
  CHECK(1.0 - cdf(p, 3.0) == Approx(oracle).epsilon(1e-12));
  CHECK(oracle == Approx(0.3528).epsilon(1e-4));
}

TEST_CASE("cdf limits and monotonicity") {
  for (const auto& d : all_families()) {
    CAPTURE(d.name());
    CHECK(cdf(d, -INFINITY) == 0.0);
    CHECK(cdf(d, INFINITY) == Approx(1.0).epsilon(1e-12));
    double prev = 0.0;
    for (double x = -6.0; x <= 14.0; x += 0.25) {
      const double F = cdf(d, x);
      CHECK(F >= prev - 1e-15);
      prev = F;
    }
  }
}

TEST_CASE("closed-form moments") {
  auto m = moments(Distribution::binomial(10, Rational(3, 10)));
  CHECK(m.mean == Approx(3.0));
  CHECK(m.variance == Approx(2.1));
  auto n = moments(Distribution::normal(2.0, 1.5));
  CHECK(n.fourth_central == Approx(3.0 * std::pow(1.5, 4)));
  CHECK(n.third_central == 0.0);
  auto hc = moments(Distribution::half_cauchy());
  CHECK(std::isinf(hc.variance));
  auto p = moments(Distribution::poisson(2.5));
  CHECK(p.mean == 2.5);
  CHECK(p.variance == 2.5);
  // Hypergeometric mean nM/N and variance n(M/N)(1-M/N)(N-n)/(N-1).
  auto h = moments(Distribution::hypergeometric(12, 4, 7));
  CHECK(h.mean == Approx(7.0 * 4.0 / 12.0));
  CHECK(h.variance == Approx(7.0 * (4.0 / 12.0) * (8.0 / 12.0) * 5.0 / 11.0));
}

TEST_CASE("closed-form moments of the finite families match summation") {
  auto b = Distribution::binomial(9, Rational(2, 7));
  double mean = 0, m2 = 0, m3 = 0, m4 = 0;
  for (long k = 0; k <= 9; ++k) mean += k * exact_mass(b, k).to_double();
  for (long k = 0; k <= 9; ++k) {
    const double w = exact_mass(b, k).to_double(), d = k - mean;
    m2 += w * d * d;
    m3 += w * d * d * d;
    m4 += w * d * d * d * d;
  }
  auto m = moments(b);
  CHECK(m.mean == Approx(mean).epsilon(1e-12));
  CHECK(m.variance == Approx(m2).epsilon(1e-12));
  CHECK(m.third_central == Approx(m3).epsilon(1e-12));
  CHECK(m.fourth_central == Approx(m4).epsilon(1e-12));

  for (const auto& d : {Distribution::uniform(1.7), Distribution::triangular(0.8)}) {
    auto closed = moments(d);
    auto quad = quadrature_moments(d);
    CHECK(quad.variance == Approx(closed.variance).epsilon(1e-10));
    CHECK(quad.fourth_central == Approx(closed.fourth_central).epsilon(1e-10));
  }
}

TEST_CASE("normal moments by quadrature agree with the closed form") {
  for (auto [a, s] : {std::pair{0.0, 1.0}, std::pair{3.5, 0.4}, std::pair{-2.0, 5.0}}) {
    auto q = quadrature_moments(Distribution::normal(a, s));
    CHECK(std::fabs(q.mean - a) < 1e-8);
    CHECK(std::fabs(q.variance - s * s) < 1e-8);
    CHECK(std::fabs(q.fourth_central - 3.0 * std::pow(s, 4)) < 1e-6);
  }
}

TEST_CASE("quantiles") {
  CHECK(quantile(Distribution::normal(0, 1), 0.75) == Approx(0.6744897501960817).epsilon(1e-12));
  CHECK(quantile(Distribution::normal(4, 2), 0.5) == Approx(4.0).epsilon(1e-12));
  CHECK(quantile(Distribution::uniform(3.0), 0.25) == Approx(-1.5));
  CHECK(quantile(Distribution::triangular(3.0), 0.5) == Approx(0.0).scale(1));
  CHECK(quantile(Distribution::half_cauchy(), 0.5) == Approx(1.0));
  CHECK(quantile(Distribution::binomial(10, Rational(1, 2)), 0.5) == 5.0);
  CHECK_THROWS_AS(quantile(Distribution::normal(0, 1), 1.0), DomainError);
  CHECK_THROWS_AS(quantile(Distribution::normal(0, 1), 0.0), DomainError);
}

TEST_CASE("cdf of quantile lands within the jump") {
  for (const auto& d : all_families()) {
    CAPTURE(d.name());
    double prev = -INFINITY;
    for (double p = 0.01; p < 0.995; p += 0.01) {
      CAPTURE(p);
      const double x = quantile(d, p);
      CHECK(x >= prev);
      prev = x;
      const double F = cdf(d, x);
      CHECK(F >= p - 1e-12);
      const double jump = d.is_discrete() ? mass_or_density(d, x) : 0.0;
      CHECK(F <= p + jump + 1e-9);
    }
  }
}

TEST_CASE("probability mass sums to one") {
  CHECK(binomial_range_exact(40, Rational(2, 9), 0, 40) == Rational(1));
  auto h = Distribution::hypergeometric(20, 7, 9);
  Rational total;
  for (long k = 0; k <= 9; ++k) total += exact_mass(h, k);
  CHECK(total == Rational(1));
  auto p = Distribution::poisson(4.5);
  double s = 0.0;
  for (long k = 0; k <= 80; ++k) s += mass_or_density(p, static_cast<double>(k));
  CHECK(s >= 1.0 - 1e-12);
}

TEST_CASE("continuous densities integrate to one") {
  for (const auto& d : all_families()) {
    if (d.is_discrete()) continue;
    CAPTURE(d.name());
    auto f = [&d](double x) { return mass_or_density(d, x); };
    auto [lo, hi] = d.support();
    double total;
    if (std::isinf(lo))
      total = integrate_real_line(f, 1e-11).value;
    else if (std::isinf(hi))
      total = integrate_upper_half(f, lo, 1e-11).value;
    else
      total = integrate(f, lo, 0.0, 1e-12).value + integrate(f, 0.0, hi, 1e-12).value;
    CHECK(total >= 1.0 - 1e-8);
    CHECK(total <= 1.0 + 1e-8);
  }
}

TEST_CASE("empirical grid validation") {
  CHECK_THROWS_AS(Distribution::empirical_grid({0.0, 1.0}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(Distribution::empirical_grid({0.0, 1.0}, {1.0}), ShapeError);
  CHECK_THROWS_AS(Distribution::empirical_grid({1.0, 0.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(Distribution::empirical_grid({0.0, 0.5, 1.0}, {1.0, -1.0, 3.0}), DomainError);
  auto g = Distribution::empirical_grid({0.0, 1.0}, {1.0, 1.0});
  CHECK(cdf(g, 0.25) == Approx(0.25));
  CHECK(quantile(g, 0.4) == Approx(0.4));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Distribution::normal(0, 0), DomainError);
  CHECK_THROWS_AS(Distribution::binomial(3, Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(Distribution::hypergeometric(5, 6, 2), DomainError);
  CHECK_THROWS_AS(Distribution::uniform(-1), DomainError);
}

TEST_CASE("sample statistics") {
  auto two = sample_stats(Sample({30, 70}));
  CHECK(two.mean == 50.0);
  CHECK(two.range == 40.0);
  CHECK(two.variance == 800.0);
  CHECK(two.midrange == 50.0);

  auto seven = sample_stats(Sample({7, 3, 1, 5, 2, 6, 4}));
  CHECK(seven.median == 4.0);
  CHECK(seven.mean == 4.0);
  CHECK(seven.skewness == Approx(0.0).scale(1));
  // Lower nearest rank: ranks ceil(7/4) = 2 and ceil(21/4) = 6.
  CHECK(seven.probable_error == Approx((6.0 - 2.0) / 2.0));
  CHECK(sample_stats(Sample({1, 2, 3, 10})).median == 2.5);
  CHECK(sample_stats(Sample({-1, 1, -3, 3})).mean_abs == 2.0);

  Sample equal({1.0, 4.0, 10.0}, std::vector<double>{2.0, 2.0, 2.0});
  CHECK(sample_stats(equal).weighted_mean == Approx(sample_stats(equal).mean));
  Sample weighted({1.0, 4.0}, std::vector<double>{3.0, 1.0});
  CHECK(sample_stats(weighted).weighted_mean == Approx(7.0 / 4.0));

  CHECK_THROWS_AS(sample_stats(Sample({1.0})), DomainError);
  CHECK_THROWS_AS(Sample({}), DomainError);
  CHECK_THROWS_AS(Sample({1.0, 2.0}, std::vector<double>{1.0}), ShapeError);
  CHECK_THROWS_AS(Sample({1.0, 2.0}, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST_CASE("skewness and excess on a hand-computed sample") {
  // x = 0, 0, 0, 4: mean 1; deviations -1,-1,-1,3.
  auto st = sample_stats(Sample({0, 0, 0, 4}));
  const double s2 = 12.0 / 3.0;
  CHECK(st.variance == Approx(s2));
  CHECK(st.skewness == Approx((24.0 / 3.0) / std::pow(s2, 1.5)));
  CHECK(st.excess == Approx((84.0 / 3.0) / (s2 * s2) - 3.0));
}

TEST_CASE("affine laws of the sample variance") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> noise(0.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(5 + t % 20);
    for (double& v : x) v = noise(gen);
    const double shift = noise(gen), scale = noise(gen);
    std::vector<double> shifted = x, scaled = x;
    for (double& v : shifted) v += shift;
    for (double& v : scaled) v *= scale;
    const double var = sample_stats(Sample(x)).variance;
    CHECK(sample_stats(Sample(shifted)).variance == Approx(var).epsilon(1e-9));
    CHECK(sample_stats(Sample(scaled)).variance == Approx(scale * scale * var).epsilon(1e-9));
  }
}

TEST_CASE("grouped moments and mode") {
  std::vector<std::pair<double, long>> table{{0.0, 55}, {1.0, 12}, {2.0, 3}};
  CHECK(grouped_moment(table, 1) == Approx(18.0 / 70.0));
  CHECK(grouped_moment(table, 2) == Approx(24.0 / 70.0));
  CHECK(grouped_moment(table, 0) == 1.0);
  CHECK(grouped_mode(table) == 0.0);
  CHECK_THROWS_AS(grouped_moment({{1.0, 0}}, 1), DomainError);
}

TEST_CASE("Chebyshev bound") {
  CHECK(chebyshev_bound(1, 2) == 0.75);
  CHECK(chebyshev_bound(1, 1) == 0.0);
  CHECK(chebyshev_bound(3, 1) == 0.0);
  CHECK_THROWS_AS(chebyshev_bound(1, 0), DomainError);
  const double truth = erf_cdf(2.0) - erf_cdf(-2.0);
  CHECK(truth == Approx(0.9545).epsilon(1e-4));
  CHECK(truth >= chebyshev_bound(1, 2));
}

TEST_CASE("Chebyshev bound holds for normal, uniform and binomial") {
  for (double beta : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    auto n = Distribution::normal(0, 1.3);
    const double pn = cdf(n, beta) - cdf(n, -beta);
    CHECK(pn >= chebyshev_bound(1.3, beta));

    auto u = Distribution::uniform(2.5);
    const double pu = cdf(u, beta) - cdf(u, -beta);
    CHECK(pu >= chebyshev_bound(std::sqrt(moments(u).variance), beta));

    // Binomial(20, 1/2): P(|k - 10| < beta) summed exactly.
    auto b = Distribution::binomial(20, Rational(1, 2));
    Rational inside;
    for (long k = 0; k <= 20; ++k)
      if (std::fabs(k - 10.0) < beta * 2.0) inside += exact_mass(b, k);
    CHECK(inside.to_double() >= chebyshev_bound(std::sqrt(5.0), beta * 2.0));
  }
}

TEST_CASE("exact and log-space binomial sums agree at the switch-over") {
  const long n = kExactBinomialLimit;
  const Rational p(1, 2);
  for (auto [lo, hi] : {std::pair{4900L, 5100L}, std::pair{0L, 4950L}, std::pair{5050L, n}}) {
    const double exact = binomial_range_exact(n, p, lo, hi).to_double();
    CHECK(binomial_range_logspace(n, 0.5, lo, hi) == Approx(exact).epsilon(1e-9));
  }
  CHECK(binomial_range(n + 1, Rational(1, 20), 0, n + 1) == Approx(1.0).epsilon(1e-12));
}
