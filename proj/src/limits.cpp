#include "classprob/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "classprob/distributions.hpp"
#include "classprob/errors.hpp"

namespace classprob {

namespace {

void check_probability_open(const Rational& p) {
  if (p <= 0 || p >= 1) throw DomainError("probability must lie in (0, 1)");
}

// Closed band of success counts k with |k/n - p| <= eps.
std::pair<long, long> closed_band(long n, const Rational& p, const Rational& eps) {
  const Rational nn(n);
  const long lo = std::max(0L, ceil(nn * (p - eps)).get_si());
  const long hi = std::min(n, floor(nn * (p + eps)).get_si());
  return {lo, hi};
}

// Open band: |k/n - p| < eps.
std::pair<long, long> open_band(long n, const Rational& p, const Rational& eps) {
  const Rational nn(n);
  const Rational lo_edge = nn * (p - eps);
  const Rational hi_edge = nn * (p + eps);
  BigInt lo = floor(lo_edge) + 1;
  BigInt hi = ceil(hi_edge) - 1;
  return {std::max(0L, lo.get_si()), std::min(n, hi.get_si())};
}

double binomial_tail_logspace(long n, double p, long lo, long hi) {
  return binomial_range_logspace(n, p, 0, lo - 1) + binomial_range_logspace(n, p, hi + 1, n);
}

}  // namespace

BinomialApprox::BinomialApprox(long n, Rational p) : n_(n), p_(std::move(p)) {
  if (n_ < 1) throw DomainError("need at least one trial");
  check_probability_open(p_);
}

double BinomialApprox::np() const { return static_cast<double>(n_) * p_.to_double(); }
double BinomialApprox::npq() const {
  return (Rational(n_) * p_ * (Rational(1) - p_)).to_double();
}

double frequency_tail(const Rational& p, long n, const Rational& eps) {
  if (n < 1) throw DomainError("need at least one trial");
  auto [lo, hi] = closed_band(n, p, eps);
  if (n <= kExactBinomialLimit)
    return (Rational(1) - binomial_range_exact(n, p, lo, hi)).to_double();
  return binomial_tail_logspace(n, p.to_double(), lo, hi);
}

SampleSizes bernoulli_sample_size(const Rational& p, const Rational& eps, const Rational& delta) {
  check_probability_open(p);
  if (eps <= 0) throw DomainError("eps must be positive");
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1)");
  const Rational bound = p * (Rational(1) - p) / (eps * eps * delta);
  const long chebyshev_n = ceil(bound).get_si();

  // Scan in log-space; confirm candidates exactly where exact sums are cheap.
  const double pd = p.to_double(), dd = delta.to_double();
  long n = 1;
  for (;; ++n) {
    auto [lo, hi] = closed_band(n, p, eps);
    const double tail = binomial_tail_logspace(n, pd, lo, hi);
    if (tail > dd * (1.0 + 1e-9)) continue;
    if (n > kExactBinomialLimit) break;
    const Rational exact_tail = Rational(1) - binomial_range_exact(n, p, lo, hi);
    if (exact_tail <= delta) break;
  }
  return {chebyshev_n, n};
}

Rational lln_gap_exact(const Rational& p, long n, const Rational& eps) {
  if (n < 1) throw DomainError("need at least one trial");
  if (p < 0 || p > 1) throw DomainError("probability must lie in [0, 1]");
  if (eps <= 0) throw DomainError("eps must be positive");
  if (n > kExactBinomialLimit) throw DomainError("exact sums limited to n <= 10^4");
  auto [lo, hi] = open_band(n, p, eps);
  return binomial_range_exact(n, p, lo, hi);
}

double lln_gap(const Rational& p, long n, const Rational& eps) {
  if (n <= kExactBinomialLimit) return lln_gap_exact(p, n, eps).to_double();
  if (eps <= 0) throw DomainError("eps must be positive");
  auto [lo, hi] = open_band(n, p, eps);
  return binomial_range_logspace(n, p.to_double(), lo, hi);
}

double poisson_lln_gap(const std::vector<double>& ps, double eps) {
  const std::size_t n = ps.size();
  if (n == 0) throw DomainError("need at least one trial");
  if (n > 10000) throw DomainError("poisson_lln_gap is limited to 10^4 trials");
  if (!(eps > 0)) throw DomainError("eps must be positive");
  double pbar = 0.0;
  for (double p : ps) {
    if (!(p > 0 && p < 1)) throw DomainError("each trial probability must lie in (0, 1)");
    pbar += p;
  }
  pbar /= static_cast<double>(n);

  // dist[k] = P(k successes so far)
  std::vector<double> dist(n + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double p = ps[t];
    for (std::size_t k = t + 1; k > 0; --k) dist[k] = dist[k] * (1.0 - p) + dist[k - 1] * p;
    dist[0] *= 1.0 - p;
  }
  // Strict band |k - n pbar| < n eps; counts within rounding of the edge
  // are treated as lying on it.
  const double nn = static_cast<double>(n);
  const double half_width = nn * eps;
  const double slack = 1e-9 * std::max(1.0, half_width);
  double inside = 0.0;
  for (std::size_t k = 0; k <= n; ++k)
    if (half_width - std::fabs(static_cast<double>(k) - nn * pbar) > slack) inside += dist[k];
  return inside;
}

Approximation dml_local(long n, const Rational& p, long mu) {
  BinomialApprox b(n, p);
  if (mu < 0 || mu > n) throw DomainError("mu must lie in [0, n]");
  const double npq = b.npq();
  const double dev = static_cast<double>(mu) - b.np();
  const double approx = std::exp(-dev * dev / (2.0 * npq)) / std::sqrt(2.0 * std::numbers::pi * npq);
  double exact;
  if (n <= kExactBinomialLimit) {
    exact = binomial_pmf_exact(n, p, mu).to_double();
  } else {
    exact = binomial_range_logspace(n, p.to_double(), mu, mu);
  }
  return {approx, exact, std::fabs(approx - exact)};
}

Approximation dml_integral(long n, const Rational& p, double a, double b) {
  BinomialApprox bin(n, p);
  if (!(a < b)) throw DomainError("dml_integral needs a < b");
  const double approx = standard_normal_cdf(b) - standard_normal_cdf(a);
  const double np = bin.np();
  const double sd = std::sqrt(bin.npq());
  long lo = 0, hi = n;
  if (std::isfinite(a)) lo = std::max(0L, static_cast<long>(std::ceil(np + a * sd - 1e-9)));
  if (std::isfinite(b)) hi = std::min(n, static_cast<long>(std::floor(np + b * sd + 1e-9)));
  const double exact = lo > hi ? 0.0 : binomial_range(n, p, lo, hi);
  return {approx, exact, std::fabs(approx - exact)};
}

double nb_bound(double s) {
  if (!(s > 0)) throw DomainError("s must be positive");
  return -std::expm1(-0.5 * s * s);
}

Rational bayes_posterior_mass(const BetaPosterior& bp) {
  if (bp.hits < 0 || bp.misses < 0) throw DomainError("hits and misses must be non-negative");
  if (bp.lower < 0 || bp.upper > 1 || !(bp.lower < bp.upper))
    throw DomainError("interval must satisfy 0 <= b < c <= 1");
  const long p = bp.hits, q = bp.misses;
  // integral_0^x u^p (1-u)^q du = sum_j C(q,j) (-1)^j x^(p+j+1) / (p+j+1)
  Rational numerator;
  for (long j = 0; j <= q; ++j) {
    const long e = p + j + 1;
    Rational term = Rational(binomial(q, j)) * (pow(bp.upper, e) - pow(bp.lower, e)) / Rational(e);
    if (j % 2 == 0)
      numerator += term;
    else
      numerator -= term;
  }
  const Rational beta(factorial(p) * factorial(q), factorial(p + q + 1));
  return numerator / beta;
}

Rational posterior_variance(long hits, long misses) {
  if (hits < 0 || misses < 0) throw DomainError("hits and misses must be non-negative");
  const long n = hits + misses;
  return Rational((hits + 1) * (misses + 1), (n + 2) * (n + 2) * (n + 3));
}

double beta_interval_mass(long hits, long misses, double lower, double upper) {
  if (hits < 0 || misses < 0) throw DomainError("hits and misses must be non-negative");
  lower = std::clamp(lower, 0.0, 1.0);
  upper = std::clamp(upper, 0.0, 1.0);
  if (!(lower < upper)) return 0.0;
  // I_x(p+1, q+1) = P(Binomial(p+q+1, x) >= p+1)
  const long m = hits + misses + 1;
  auto regularized = [&](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return binomial_range_logspace(m, x, hits + 1, m);
  };
  return std::max(0.0, regularized(upper) - regularized(lower));
}

TimerdingCheck timerding_limit_check(long hits, long misses, double a, double b) {
  if (hits < 1 || misses < 1) throw DomainError("hits and misses must be positive");
  if (!(a < b)) throw DomainError("timerding check needs a < b");
  const double n = static_cast<double>(hits + misses);
  const double center = static_cast<double>(hits) / n;
  const double scale = std::sqrt(static_cast<double>(hits) * static_cast<double>(misses) / (n * n * n));
  const double lower = std::isfinite(a) ? center + a * scale : (a < 0 ? 0.0 : 1.0);
  const double upper = std::isfinite(b) ? center + b * scale : (b < 0 ? 0.0 : 1.0);
  const double posterior = beta_interval_mass(hits, misses, lower, upper);
  const double normal = standard_normal_cdf(b) - standard_normal_cdf(a);
  return {posterior, normal, std::fabs(posterior - normal)};
}

}  // namespace classprob
