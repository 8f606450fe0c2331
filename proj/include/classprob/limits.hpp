#pragma once

// Laws of large numbers, the De Moivre-Laplace theorems and the Bayes
// posterior of an unknown proportion.
//
// Binomial sums are exact rationals for n <= kExactBinomialLimit and
// log-space doubles above. Event bands are closed intervals with no
// continuity correction.

#include <vector>

#include "classprob/rational.hpp"

namespace classprob {

/// Trials n and success probability p with 0 < p < 1, n >= 1.
class BinomialApprox {
public:
  BinomialApprox(long n, Rational p);

  long n() const { return n_; }
  const Rational& p() const { return p_; }
  double np() const;
  double npq() const;

private:
  long n_;
  Rational p_;
};

struct SampleSizes {
  long chebyshev_n;  // ceil(pq / (eps^2 delta))
  long exact_n;      // first n whose exact two-sided tail is <= delta
};

/// Trials needed so that P(|mu/n - p| > eps) <= delta.
SampleSizes bernoulli_sample_size(const Rational& p, const Rational& eps, const Rational& delta);

/// Exact P(|mu/n - p| > eps) for n trials.
double frequency_tail(const Rational& p, long n, const Rational& eps);

/// P(|mu/n - p| < eps), strict, by binomial summation.
double lln_gap(const Rational& p, long n, const Rational& eps);
/// The same probability as an exact rational; n <= kExactBinomialLimit.
Rational lln_gap_exact(const Rational& p, long n, const Rational& eps);

/// P(|mu/n - pbar| < eps) for independent trials with probabilities ps,
/// by convolving the Bernoulli laws one trial at a time.
double poisson_lln_gap(const std::vector<double>& ps, double eps);

struct Approximation {
  double approx;
  double exact;
  double abs_err;
};

/// Normal approximation exp(-(mu-np)^2/(2npq)) / sqrt(2 pi npq) against the
/// binomial mass at mu.
Approximation dml_local(long n, const Rational& p, long mu);

/// Phi(b) - Phi(a) against P(a <= (mu - np)/sqrt(npq) <= b). Either bound
/// may be infinite.
Approximation dml_integral(long n, const Rational& p, double a, double b);

/// 1 - exp(-s^2/2), Nikolaus Bernoulli's approximation of
/// P(|mu - np| / sqrt(npq) <= s).
double nb_bound(double s);

/// Uniform prior on an unknown point r in [0, 1]; in p + q trials it fell
/// p times inside [b, c] and q times outside.
struct BetaPosterior {
  long hits;
  long misses;
  Rational lower;
  Rational upper;
};

/// integral_b^c u^p (1-u)^q du / integral_0^1 u^p (1-u)^q du, exactly.
Rational bayes_posterior_mass(const BetaPosterior& bp);

/// Variance of the beta posterior, (p+1)(q+1) / ((n+2)^2 (n+3)).
Rational posterior_variance(long hits, long misses);

/// P(lower <= r <= upper) for r ~ Beta(hits + 1, misses + 1), in double
/// precision via the binomial-tail identity. Bounds are clipped to [0, 1].
double beta_interval_mass(long hits, long misses, double lower, double upper);

struct TimerdingCheck {
  double posterior_prob;
  double normal_prob;
  double abs_err;
};

/// Posterior mass of [p/n + a s, p/n + b s] with s = sqrt(pq/n^3) against
/// Phi(b) - Phi(a).
TimerdingCheck timerding_limit_check(long hits, long misses, double a, double b);

}  // namespace classprob
