#include "classprob/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "classprob/errors.hpp"
#include "classprob/quadrature.hpp"

namespace classprob {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_integer_value(double x) { return std::isfinite(x) && std::floor(x) == x; }

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

double grid_density(const family::EmpiricalGrid& g, double x) {
  const auto& xs = g.points;
  if (x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return g.densities.back();
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return g.densities[i - 1] + t * (g.densities[i] - g.densities[i - 1]);
}

double grid_cdf(const family::EmpiricalGrid& g, double x) {
  const auto& xs = g.points;
  const auto& ys = g.densities;
  if (x <= xs.front()) return 0.0;
  if (x >= xs.back()) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (x >= xs[i]) {
      acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
      continue;
    }
    const double h = x - xs[i - 1];
    const double slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    acc += ys[i - 1] * h + 0.5 * slope * h * h;
    break;
  }
  return std::clamp(acc, 0.0, 1.0);
}

double poisson_log_pmf(double rate, long k) {
  if (rate == 0.0) return k == 0 ? 0.0 : -kInf;
  return -rate + static_cast<double>(k) * std::log(rate) - std::lgamma(static_cast<double>(k) + 1.0);
}

double poisson_cdf(double rate, long k) {
  if (k < 0) return 0.0;
  double sum = 0.0;
  for (long i = 0; i <= k; ++i) sum += std::exp(poisson_log_pmf(rate, i));
  return std::min(sum, 1.0);
}

// Exact cumulative sums over the integer support [lo, hi].
template <class Mass>
Rational exact_cumulative(long lo, long hi, long upto, Mass mass) {
  Rational acc;
  for (long k = lo; k <= std::min(hi, upto); ++k) acc += mass(k);
  return acc;
}

// Smallest x with cdf(x) >= p for a continuous cdf, by bisection on [lo, hi].
template <class Cdf>
double invert_continuous(Cdf F, double p, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo) + std::fabs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

// --- construction ---------------------------------------------------------

Distribution Distribution::uniform(double half_width) {
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw DomainError("uniform half-width must be positive");
  return Distribution(family::Uniform{half_width});
}

Distribution Distribution::triangular(double half_width) {
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw DomainError("triangular half-width must be positive");
  return Distribution(family::Triangular{half_width});
}

Distribution Distribution::binomial(long trials, Rational p) {
  if (trials < 0) throw DomainError("binomial trials must be non-negative");
  if (p < 0 || p > 1) throw DomainError("binomial p must lie in [0, 1]");
  return Distribution(family::Binomial{trials, std::move(p)});
}

Distribution Distribution::poisson(double rate) {
  if (!(rate >= 0) || !std::isfinite(rate)) throw DomainError("poisson rate must be non-negative");
  return Distribution(family::Poisson{rate});
}

Distribution Distribution::hypergeometric(long population, long marked, long draws) {
  if (population < 0 || marked < 0 || draws < 0 || marked > population || draws > population)
    throw DomainError("hypergeometric needs 0 <= M <= N and 0 <= n <= N");
  return Distribution(family::Hypergeometric{population, marked, draws});
}

Distribution Distribution::normal(double mean, double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma) || !std::isfinite(mean))
    throw DomainError("normal sigma must be positive");
  return Distribution(family::Normal{mean, sigma});
}

Distribution Distribution::half_cauchy() { return Distribution(family::HalfCauchy{}); }

Distribution Distribution::empirical_grid(std::vector<double> points, std::vector<double> densities) {
  if (points.size() < 2 || points.size() != densities.size())
    throw ShapeError("empirical grid needs at least two nodes and matching ordinates");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1])) throw DomainError("grid abscissae must be strictly ascending");
  for (double y : densities)
    if (!(y >= 0) || !std::isfinite(y)) throw DomainError("grid densities must be non-negative");
  if (std::fabs(trapezoid(points, densities) - 1.0) > 1e-9)
    throw DomainError("grid density must integrate to 1 within 1e-9");
  return Distribution(family::EmpiricalGrid{std::move(points), std::move(densities)});
}

bool Distribution::is_discrete() const {
  return std::holds_alternative<family::Binomial>(family_) ||
         std::holds_alternative<family::Poisson>(family_) ||
         std::holds_alternative<family::Hypergeometric>(family_);
}

std::string Distribution::name() const {
  return std::visit(overloaded{
                        [](const family::Uniform&) { return std::string("uniform"); },
                        [](const family::Triangular&) { return std::string("triangular"); },
                        [](const family::Binomial&) { return std::string("binomial"); },
                        [](const family::Poisson&) { return std::string("poisson"); },
                        [](const family::Hypergeometric&) { return std::string("hypergeometric"); },
                        [](const family::Normal&) { return std::string("normal"); },
                        [](const family::HalfCauchy&) { return std::string("half_cauchy"); },
                        [](const family::EmpiricalGrid&) { return std::string("empirical_grid"); },
                    },
                    family_);
}

std::pair<double, double> Distribution::support() const {
  return std::visit(
      overloaded{
          [](const family::Uniform& u) { return std::pair{-u.half_width, u.half_width}; },
          [](const family::Triangular& t) { return std::pair{-t.half_width, t.half_width}; },
          [](const family::Binomial& b) { return std::pair{0.0, static_cast<double>(b.trials)}; },
          [](const family::Poisson&) { return std::pair{0.0, kInf}; },
          [](const family::Hypergeometric& h) {
            return std::pair{static_cast<double>(std::max(0L, h.draws - (h.population - h.marked))),
                             static_cast<double>(std::min(h.marked, h.draws))};
          },
          [](const family::Normal&) { return std::pair{-kInf, kInf}; },
          [](const family::HalfCauchy&) { return std::pair{0.0, kInf}; },
          [](const family::EmpiricalGrid& g) { return std::pair{g.points.front(), g.points.back()}; },
      },
      family_);
}

// --- mass, density, cdf ---------------------------------------------------

Rational exact_mass(const Distribution& d, long k) {
  return std::visit(
      overloaded{
          [k](const family::Binomial& b) { return binomial_pmf_exact(b.trials, b.p, k); },
          [k](const family::Hypergeometric& h) {
            if (k < 0 || k > h.marked || k > h.draws || h.draws - k > h.population - h.marked)
              return Rational(0);
            return Rational(binomial(h.marked, k) * binomial(h.population - h.marked, h.draws - k),
                            binomial(h.population, h.draws));
          },
          [](const auto&) -> Rational {
            throw DomainError("exact mass is only available for binomial and hypergeometric");
          },
      },
      d.family());
}

double mass_or_density(const Distribution& d, double x) {
  if (d.is_discrete() && !is_integer_value(x))
    throw DomainError("discrete family evaluated at a non-integer point");
  return std::visit(
      overloaded{
          [x](const family::Uniform& u) {
            return std::fabs(x) <= u.half_width ? 1.0 / (2.0 * u.half_width) : 0.0;
          },
          [x](const family::Triangular& t) {
            const double a = t.half_width;
            return std::fabs(x) <= a ? (a - std::fabs(x)) / (a * a) : 0.0;
          },
          [&d, x](const family::Binomial&) { return exact_mass(d, static_cast<long>(x)).to_double(); },
          [x](const family::Poisson& p) {
            return x < 0 ? 0.0 : std::exp(poisson_log_pmf(p.rate, static_cast<long>(x)));
          },
          [&d, x](const family::Hypergeometric&) {
            return exact_mass(d, static_cast<long>(x)).to_double();
          },
          [x](const family::Normal& n) {
            const double z = (x - n.mean) / n.sigma;
            return standard_normal_pdf(z) / n.sigma;
          },
          [x](const family::HalfCauchy&) {
            return x < 0 ? 0.0 : 2.0 / (std::numbers::pi * (1.0 + x * x));
          },
          [x](const family::EmpiricalGrid& g) { return grid_density(g, x); },
      },
      d.family());
}

double standard_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_table(double z) {
  if (std::isnan(z)) return z;
  const double sign = z < 0 ? -1.0 : 1.0;
  // Beyond 40 the remaining mass is far below double resolution.
  const double upper = std::min(std::fabs(z), 40.0);
  const double half = integrate(standard_normal_pdf, 0.0, upper, 1e-13).value;
  return sign * std::min(half, 0.5);
}

double standard_normal_cdf(double z) {
  if (z == kInf) return 1.0;
  if (z == -kInf) return 0.0;
  return 0.5 + normal_table(z);
}

double standard_normal_quantile(double p) {
  if (!(p > 0 && p < 1)) throw DomainError("quantile probability must lie in (0, 1)");
  // Newton on the table function, safeguarded by a bracket.
  double lo = -40.0, hi = 40.0;
  double z = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double f = standard_normal_cdf(z) - p;
    if (f >= 0)
      hi = z;
    else
      lo = z;
    double next = z - f / standard_normal_pdf(z);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - z) < 1e-15 * std::max(1.0, std::fabs(z))) {
      z = next;
      break;
    }
    z = next;
  }
  return z;
}

double cdf(const Distribution& d, double x) {
  if (std::isnan(x)) throw DomainError("cdf at NaN");
  return std::visit(
      overloaded{
          [x](const family::Uniform& u) {
            return std::clamp((x + u.half_width) / (2.0 * u.half_width), 0.0, 1.0);
          },
          [x](const family::Triangular& t) {
            const double a = t.half_width;
            if (x <= -a) return 0.0;
            if (x >= a) return 1.0;
            if (x <= 0) return 0.5 * (a + x) * (a + x) / (a * a);
            return 1.0 - 0.5 * (a - x) * (a - x) / (a * a);
          },
          [x](const family::Binomial& b) {
            if (x < 0) return 0.0;
            if (x >= static_cast<double>(b.trials)) return 1.0;
            return binomial_range(b.trials, b.p, 0, static_cast<long>(std::floor(x)));
          },
          [x](const family::Poisson& p) {
            if (x < 0) return 0.0;
            if (x == kInf) return 1.0;
            return poisson_cdf(p.rate, static_cast<long>(std::floor(x)));
          },
          [&d, x](const family::Hypergeometric& h) {
            auto [lo, hi] = d.support();
            if (x < lo) return 0.0;
            if (x >= hi) return 1.0;
            return exact_cumulative(static_cast<long>(lo), static_cast<long>(hi),
                                    static_cast<long>(std::floor(x)),
                                    [&d](long k) { return exact_mass(d, k); })
                .to_double();
            (void)h;
          },
          [x](const family::Normal& n) { return standard_normal_cdf((x - n.mean) / n.sigma); },
          [x](const family::HalfCauchy&) {
            if (x <= 0) return 0.0;
            return 2.0 / std::numbers::pi * std::atan(x);
          },
          [x](const family::EmpiricalGrid& g) { return grid_cdf(g, x); },
      },
      d.family());
}

// --- moments --------------------------------------------------------------

Moments moments(const Distribution& d) {
  return std::visit(
      overloaded{
          [](const family::Uniform& u) {
            const double a = u.half_width;
            return Moments{0.0, a * a / 3.0, 0.0, std::pow(a, 4) / 5.0};
          },
          [](const family::Triangular& t) {
            const double a = t.half_width;
            return Moments{0.0, a * a / 6.0, 0.0, std::pow(a, 4) / 15.0};
          },
          [](const family::Binomial& b) {
            const double n = static_cast<double>(b.trials);
            const double p = b.p.to_double();
            const double q = 1.0 - p;
            const double npq = n * p * q;
            return Moments{n * p, npq, npq * (q - p), npq * (1.0 + 3.0 * (n - 2.0) * p * q)};
          },
          [](const family::Poisson& p) {
            const double a = p.rate;
            return Moments{a, a, a, a + 3.0 * a * a};
          },
          [&d](const family::Hypergeometric&) {
            // Exact summation over the finite support.
            auto [lo, hi] = d.support();
            Rational mean;
            for (long k = static_cast<long>(lo); k <= static_cast<long>(hi); ++k)
              mean += exact_mass(d, k) * Rational(k);
            Rational m2, m3, m4;
            for (long k = static_cast<long>(lo); k <= static_cast<long>(hi); ++k) {
              const Rational dev = Rational(k) - mean;
              const Rational w = exact_mass(d, k);
              m2 += w * dev * dev;
              m3 += w * dev * dev * dev;
              m4 += w * dev * dev * dev * dev;
            }
            return Moments{mean.to_double(), m2.to_double(), m3.to_double(), m4.to_double()};
          },
          [](const family::Normal& n) {
            const double s2 = n.sigma * n.sigma;
            return Moments{n.mean, s2, 0.0, 3.0 * s2 * s2};
          },
          [](const family::HalfCauchy&) { return Moments{kInf, kInf, kInf, kInf}; },
          [&d](const family::EmpiricalGrid&) { return quadrature_moments(d); },
      },
      d.family());
}

Moments quadrature_moments(const Distribution& d, double abs_tol) {
  if (d.is_discrete()) throw DomainError("quadrature moments need a continuous family");
  if (std::holds_alternative<family::HalfCauchy>(d.family()))
    return Moments{kInf, kInf, kInf, kInf};

  // Integrate piecewise over finite panels; infinite supports are cut at
  // +-40 scale units, where the normal tail is below 1e-300.
  std::vector<double> breaks;
  if (const auto* g = std::get_if<family::EmpiricalGrid>(&d.family())) {
    breaks = g->points;
  } else if (const auto* n = std::get_if<family::Normal>(&d.family())) {
    for (int k = -40; k <= 40; k += 4) breaks.push_back(n->mean + k * n->sigma);
  } else {
    auto [lo, hi] = d.support();
    breaks = {lo, 0.0, hi};
  }
  auto integrate_panels = [&](const std::function<double(double)>& f) {
    double s = 0.0;
    const double tol = abs_tol / static_cast<double>(breaks.size());
    for (std::size_t i = 1; i < breaks.size(); ++i) s += integrate(f, breaks[i - 1], breaks[i], tol).value;
    return s;
  };
  auto phi = [&d](double x) { return mass_or_density(d, x); };
  const double mean = integrate_panels([&](double x) { return x * phi(x); });
  auto central = [&](int k) {
    return integrate_panels([&, k](double x) { return std::pow(x - mean, k) * phi(x); });
  };
  return Moments{mean, central(2), central(3), central(4)};
}

// --- quantiles ------------------------------------------------------------

double quantile(const Distribution& d, double p) {
  if (!(p > 0 && p < 1)) throw DomainError("quantile probability must lie in (0, 1)");
  return std::visit(
      overloaded{
          [p](const family::Uniform& u) { return -u.half_width + 2.0 * u.half_width * p; },
          [p](const family::Triangular& t) {
            const double a = t.half_width;
            return p <= 0.5 ? -a + a * std::sqrt(2.0 * p) : a - a * std::sqrt(2.0 * (1.0 - p));
          },
          [&d, p](const family::Binomial& b) {
            for (long k = 0; k < b.trials; ++k)
              if (cdf(d, static_cast<double>(k)) >= p) return static_cast<double>(k);
            return static_cast<double>(b.trials);
          },
          [p](const family::Poisson& pois) {
            double acc = 0.0;
            for (long k = 0;; ++k) {
              acc += std::exp(poisson_log_pmf(pois.rate, k));
              if (acc >= p || k > 100000000) return static_cast<double>(k);
            }
          },
          [&d, p](const family::Hypergeometric&) {
            auto [lo, hi] = d.support();
            Rational acc;
            for (long k = static_cast<long>(lo); k < static_cast<long>(hi); ++k) {
              acc += exact_mass(d, k);
              if (acc.to_double() >= p) return static_cast<double>(k);
            }
            return hi;
          },
          [p](const family::Normal& n) { return n.mean + n.sigma * standard_normal_quantile(p); },
          [p](const family::HalfCauchy&) { return std::tan(0.5 * std::numbers::pi * p); },
          [p](const family::EmpiricalGrid& g) {
            return invert_continuous([&g](double x) { return grid_cdf(g, x); }, p, g.points.front(),
                                     g.points.back());
          },
      },
      d.family());
}

// --- binomial sums --------------------------------------------------------

Rational binomial_pmf_exact(long n, const Rational& p, long k) {
  if (n < 0) throw DomainError("binomial trials must be non-negative");
  if (p < 0 || p > 1) throw DomainError("binomial p must lie in [0, 1]");
  if (k < 0 || k > n) return Rational(0);
  return Rational(binomial(n, k)) * pow(p, k) * pow(Rational(1) - p, n - k);
}

Rational binomial_range_exact(long n, const Rational& p, long kmin, long kmax) {
  if (n < 0) throw DomainError("binomial trials must be non-negative");
  if (p < 0 || p > 1) throw DomainError("binomial p must lie in [0, 1]");
  kmin = std::max(kmin, 0L);
  kmax = std::min(kmax, n);
  if (kmin > kmax) return Rational(0);
  if (p == 0) return Rational(kmin == 0 ? 1 : 0);
  if (p == 1) return Rational(kmax == n ? 1 : 0);
  // With p = a/d and q = b/d, P(k) = C(n,k) a^k b^(n-k) / d^n. Sum the
  // integer numerators, stepping C(n,k) a^k b^(n-k) by (n-k) a / ((k+1) b),
  // which always divides exactly.
  const BigInt a = p.numerator();
  const BigInt d = p.denominator();
  const BigInt b = d - a;
  BigInt ak, bk, dn;
  mpz_pow_ui(ak.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(kmin));
  mpz_pow_ui(bk.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n - kmin));
  mpz_pow_ui(dn.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(n));
  BigInt term = binomial(n, kmin) * ak * bk;
  BigInt sum = term;
  for (long k = kmin; k < kmax; ++k) {
    term *= (n - k);
    term *= a;
    BigInt divisor = BigInt(k + 1) * b;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), divisor.get_mpz_t());
    sum += term;
  }
  return Rational(sum, dn);
}

double binomial_range_logspace(long n, double p, long kmin, long kmax) {
  if (n < 0) throw DomainError("binomial trials must be non-negative");
  if (!(p >= 0 && p <= 1)) throw DomainError("binomial p must lie in [0, 1]");
  kmin = std::max(kmin, 0L);
  kmax = std::min(kmax, n);
  if (kmin > kmax) return 0.0;
  if (p == 0.0) return kmin == 0 ? 1.0 : 0.0;
  if (p == 1.0) return kmax == n ? 1.0 : 0.0;
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
  // Terms further than 40 sd from the mode are below 1e-300 relative.
  const double mu = static_cast<double>(n) * p;
  const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  const long lo = std::max(kmin, static_cast<long>(std::floor(mu - 40.0 * sd - 1.0)));
  const long hi = std::min(kmax, static_cast<long>(std::ceil(mu + 40.0 * sd + 1.0)));
  double sum = 0.0;
  for (long k = lo; k <= hi; ++k) {
    const double kk = static_cast<double>(k);
    sum += std::exp(lgn - std::lgamma(kk + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
                    kk * lp + static_cast<double>(n - k) * lq);
  }
  return std::min(sum, 1.0);
}

double binomial_range(long n, const Rational& p, long kmin, long kmax) {
  if (n <= kExactBinomialLimit) return binomial_range_exact(n, p, kmin, kmax).to_double();
  return binomial_range_logspace(n, p.to_double(), kmin, kmax);
}

// --- samples --------------------------------------------------------------

Sample::Sample(std::vector<double> values, std::optional<std::vector<double>> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.empty()) throw DomainError("sample must be non-empty");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("sample values must be finite");
  if (weights_) {
    if (weights_->size() != values_.size()) throw ShapeError("weights must match values in length");
    for (double w : *weights_)
      if (!(w > 0) || !std::isfinite(w)) throw DomainError("weights must be positive");
  }
}

double empirical_quantile(const Sample& s, double p) {
  if (!(p > 0 && p < 1)) throw DomainError("quantile probability must lie in (0, 1)");
  std::vector<double> sorted = s.values();
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(n * p - 1e-12));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

SampleStats sample_stats(const Sample& s) {
  const std::size_t count = s.size();
  if (count < 2) throw DomainError("at least two observations are needed for dispersion");
  const double n = static_cast<double>(count);
  const auto& x = s.values();

  SampleStats st{};
  st.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  if (s.weights()) {
    const auto& w = *s.weights();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      num += w[i] * x[i];
      den += w[i];
    }
    st.weighted_mean = num / den;
  } else {
    st.weighted_mean = st.mean;
  }

  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  st.median = count % 2 == 1 ? sorted[count / 2] : 0.5 * (sorted[count / 2 - 1] + sorted[count / 2]);
  st.range = sorted.back() - sorted.front();
  st.midrange = 0.5 * (sorted.back() + sorted.front());

  double abs_sum = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    abs_sum += std::fabs(v);
    const double dv = v - st.mean;
    m2 += dv * dv;
    m3 += dv * dv * dv;
    m4 += dv * dv * dv * dv;
  }
  st.mean_abs = abs_sum / n;
  st.variance = m2 / (n - 1.0);
  st.std = std::sqrt(st.variance);
  const double third = m3 / (n - 1.0);
  const double fourth = m4 / (n - 1.0);
  if (st.variance > 0) {
    st.skewness = third / (st.variance * st.std);
    st.excess = fourth / (st.variance * st.variance) - 3.0;
  } else {
    st.skewness = std::numeric_limits<double>::quiet_NaN();
    st.excess = std::numeric_limits<double>::quiet_NaN();
  }
  st.probable_error = 0.5 * (empirical_quantile(s, 0.75) - empirical_quantile(s, 0.25));
  return st;
}

double grouped_moment(const std::vector<std::pair<double, long>>& frequencies, int order) {
  if (frequencies.empty()) throw DomainError("empty frequency table");
  if (order < 0) throw DomainError("moment order must be non-negative");
  double total = 0.0, acc = 0.0;
  for (const auto& [value, n] : frequencies) {
    if (n <= 0) throw DomainError("frequency counts must be positive");
    total += static_cast<double>(n);
    acc += static_cast<double>(n) * std::pow(value, order);
  }
  return acc / total;
}

double grouped_mode(const std::vector<std::pair<double, long>>& frequencies) {
  if (frequencies.empty()) throw DomainError("empty frequency table");
  auto best = frequencies.begin();
  for (auto it = frequencies.begin(); it != frequencies.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

double chebyshev_bound(double sigma, double beta) {
  if (!(beta > 0)) throw DomainError("chebyshev bound needs beta > 0");
  if (!(sigma >= 0)) throw DomainError("sigma must be non-negative");
  return std::max(0.0, 1.0 - sigma * sigma / (beta * beta));
}

}  // namespace classprob
