#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "classprob/rational.hpp"

namespace classprob {

namespace family {

struct Uniform {  // constant density on [-half_width, half_width]
  double half_width;
};
struct Triangular {  // even triangle on [-half_width, half_width], peak 1/half_width at 0
  double half_width;
};
struct Binomial {
  long trials;
  Rational p;
};
struct Poisson {
  double rate;
};
struct Hypergeometric {  // n drawn from N items, M of them marked
  long population;
  long marked;
  long draws;
};
struct Normal {
  double mean;
  double sigma;
};
struct HalfCauchy {};  // 2 / (pi (1 + x^2)) on [0, inf)
struct EmpiricalGrid {  // piecewise-linear density through the given nodes
  std::vector<double> points;
  std::vector<double> densities;
};

}  // namespace family

/// One of the classical families with validated parameters. Immutable.
class Distribution {
public:
  using Family = std::variant<family::Uniform, family::Triangular, family::Binomial,
                              family::Poisson, family::Hypergeometric, family::Normal,
                              family::HalfCauchy, family::EmpiricalGrid>;

  static Distribution uniform(double half_width);
  static Distribution triangular(double half_width);
  static Distribution binomial(long trials, Rational p);
  static Distribution poisson(double rate);
  static Distribution hypergeometric(long population, long marked, long draws);
  static Distribution normal(double mean, double sigma);
  static Distribution half_cauchy();
  static Distribution empirical_grid(std::vector<double> points, std::vector<double> densities);

  const Family& family() const { return family_; }
  bool is_discrete() const;
  std::string name() const;

  /// Support bounds (may be infinite).
  std::pair<double, double> support() const;

private:
  explicit Distribution(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// pmf for discrete families (x must be an integer), pdf otherwise.
double mass_or_density(const Distribution& d, double x);

/// Exact pmf for the binomial and hypergeometric families.
Rational exact_mass(const Distribution& d, long k);

/// P(xi <= x). Equal to P(xi < x) for the continuous families.
double cdf(const Distribution& d, double x);

/// (1/sqrt(2 pi)) * integral_0^z exp(-t^2/2) dt, the one-sided normal table
/// function. Adaptive quadrature to 1e-12 absolute.
double normal_table(double z);
double standard_normal_cdf(double z);
double standard_normal_pdf(double z);
double standard_normal_quantile(double p);

struct Moments {
  double mean;
  double variance;
  double third_central;
  double fourth_central;  // +inf where the moment diverges
};

/// Closed-form moments of the family.
Moments moments(const Distribution& d);

/// Moments of a continuous family by adaptive quadrature of x*phi and
/// (x - mean)^k * phi over the support. Independent of the closed forms.
Moments quadrature_moments(const Distribution& d, double abs_tol = 1e-12);

/// Smallest x with cdf(x) >= p, for 0 < p < 1.
double quantile(const Distribution& d, double p);

// --- binomial sums shared with the limit theorems -------------------------

/// Largest n for which binomial sums are evaluated in exact rationals;
/// above it they use log-space floating point.
inline constexpr long kExactBinomialLimit = 10000;

Rational binomial_pmf_exact(long n, const Rational& p, long k);
/// P(kmin <= mu <= kmax), closed interval, clipped to [0, n].
Rational binomial_range_exact(long n, const Rational& p, long kmin, long kmax);
double binomial_range_logspace(long n, double p, long kmin, long kmax);
/// Dispatches on kExactBinomialLimit.
double binomial_range(long n, const Rational& p, long kmin, long kmax);

// --- samples --------------------------------------------------------------

/// Observations with optional positive weights.
class Sample {
public:
  explicit Sample(std::vector<double> values, std::optional<std::vector<double>> weights = {});

  const std::vector<double>& values() const { return values_; }
  const std::optional<std::vector<double>>& weights() const { return weights_; }
  std::size_t size() const { return values_.size(); }

private:
  std::vector<double> values_;
  std::optional<std::vector<double>> weights_;
};

struct SampleStats {
  double mean;
  double weighted_mean;  // equals mean when no weights are given
  double median;
  double midrange;
  double range;
  double mean_abs;       // sum |x_i| / n, the values read as errors
  double variance;       // denominator n - 1
  double std;
  double skewness;       // m3 / s^3 with m3 over n - 1
  double excess;         // m4 / s^4 - 3 with m4 over n - 1
  double probable_error; // half the distance between the 1/4 and 3/4 quantiles
};

/// Throws DomainError when n < 2.
SampleStats sample_stats(const Sample& s);

/// Lower nearest rank: the ceil(n p)-th order statistic (at least the first).
double empirical_quantile(const Sample& s, double p);

/// (1/n) sum n_x x^s over a frequency table of (value, count) pairs.
double grouped_moment(const std::vector<std::pair<double, long>>& frequencies, int order);

/// Value with the largest count; ties go to the first listed.
double grouped_mode(const std::vector<std::pair<double, long>>& frequencies);

/// max(0, 1 - sigma^2 / beta^2): a lower bound for P(|xi - E xi| < beta).
double chebyshev_bound(double sigma, double beta);

}  // namespace classprob
