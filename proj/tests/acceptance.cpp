// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "classprob/distributions.hpp"
#include "classprob/estimation.hpp"
#include "classprob/exact.hpp"
#include "classprob/limits.hpp"
#include "classprob/markov.hpp"
#include "classprob/montecarlo.hpp"
#include "classprob/rng.hpp"
#include "classprob/scenarios.hpp"
#include "classprob/transforms.hpp"

using namespace classprob;

namespace {

int failures = 0;
int total = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  ++total;
  if (!ok) ++failures;
  std::printf("%s  %-44s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void timing(const std::string& group, Clock::time_point start, double limit) {
  const double s = seconds_since(start);
  report(group + "/runtime", s < limit, fmt("%.3f s (limit %.0f s)", s, limit));
}

// --- 1. exact reproductions -------------------------------------------------
void exact_group() {
  const auto start = Clock::now();

  const BigInt nine = dice_sum_count(3, 6, 9), ten = dice_sum_count(3, 6, 10);
  report("exact/three-dice-counts", nine == 25 && ten == 27 && classical_probability(25, 216) == Rational(25, 216),
         nine.get_str() + " and " + ten.get_str() + " of 216");

  FiniteEventSpace two_rolls(36);
  two_rolls.add_event("A", [](std::size_t c) { return c / 6 == 5; });
  two_rolls.add_event("B", [](std::size_t c) { return c % 6 == 5; });
  const Rational u = union_probability(two_rolls, {"A", "B"});
  report("exact/two-roll-six-union", u == Rational(11, 36), u.str());

  CauseSystem urns({Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3), Rational(3, 8)});
  const Rational tp = total_probability(urns);
  report("exact/total-probability", tp == Rational(11, 24) && tp.to_fixed(3) == "0.458", tp.str() + " = " + tp.to_fixed(3));
  const auto post = bayes_posteriors(urns);
  const bool ratio = post[0] * 33 == 8 && post[1] * 33 == 16 && post[2] * 33 == 9;
  report("exact/bayes-posteriors-8-16-9", ratio, (post[0] * 33).str() + ":" + (post[1] * 33).str() + ":" + (post[2] * 33).str());

  const Rational pts = points_division(1, 2, Rational(1, 2));
  report("exact/problem-of-points", pts == Rational(3, 4), pts.str());
  const auto ruin = ruin_chances(12, 12, Rational(5, 14), Rational(9, 14));
  const Rational want = pow(Rational(5), 12) / pow(Rational(9), 12);
  report("exact/ruin-ratio-5^12:9^12", ruin.a / ruin.b == want, (ruin.a / ruin.b).str());

  const auto [one_die, two_dice] = de_mere();
  report("exact/de-mere-one-die-0.518", one_die.to_fixed(3) == "0.518", one_die.to_fixed(6));
  report("exact/de-mere-two-dice-0.492", two_dice.to_fixed(3) == "0.492",
         two_dice.to_fixed(6) + " renders " + two_dice.to_fixed(3));
  report("exact/de-mere-difference-0.026", (one_die - two_dice).to_fixed(3) == "0.026", (one_die - two_dice).to_fixed(6));

  const Rational pmf = binomial_pmf_exact(4, Rational(1, 6), 2);
  report("exact/binomial-pmf-4-1/6-2", pmf == Rational(25, 216), pmf.str());
  bool urn_ok = true;
  for (long n = 1; n <= 100; ++n) urn_ok = urn_ok && poisson_urn(n) == Rational(1, 2);
  report("exact/poisson-urn-1..100", urn_ok, "1/2 for all n");

  bool bervi_ok = true;
  for (long n = 2; n <= 40; ++n) bervi_ok = bervi_ok && bervi_coverage(n) == 1 - pow(Rational(1, 2), n - 1);
  report("exact/bervi-coverage", bervi_ok, "n = 2..40, n=5: " + bervi_coverage(5).str());
  const double nt = neglect_threshold(1e-4);
  report("exact/neglect-threshold", nt >= 13.28 && nt <= 13.30, fmt("%.6f", nt));

  timing("exact", start, 1.0);
}

// --- 2. numeric reproductions -----------------------------------------------
void numeric_group() {
  const auto start = Clock::now();

  const double t3 = normal_table(3.0);
  report("numeric/normal-table-z3", std::fabs(t3 - 0.49865) <= 5e-5, fmt("%.7f", t3));
  const double q75 = quantile(Distribution::normal(0, 1), 0.75);
  report("numeric/normal-quantile-0.75", std::fabs(q75 - 0.67449) <= 5e-5, fmt("%.7f", q75));

  double worst_mean = 0, worst_var = 0, worst_m4 = 0;
  for (auto [a, s] : {std::pair{0.0, 1.0}, std::pair{1.5, 2.0}, std::pair{-3.0, 0.5}, std::pair{10.0, 3.0}}) {
    auto m = quadrature_moments(Distribution::normal(a, s));
    worst_mean = std::max(worst_mean, std::fabs(m.mean - a));
    worst_var = std::max(worst_var, std::fabs(m.variance - s * s));
    worst_m4 = std::max(worst_m4, std::fabs(m.fourth_central - 3 * std::pow(s, 4)));
  }
  report("numeric/normal-quadrature-moments", worst_mean < 1e-8 && worst_var < 1e-8 && worst_m4 < 1e-6,
         fmt("|dmean| %.1e, |dvar| %.1e, |dm4| %.1e", worst_mean, worst_var, worst_m4));

  auto di = dml_integral(10000, Rational(1, 2), -1, 1);
  report("numeric/dml-integral-n1e4", di.abs_err < 0.01 && std::fabs(di.approx - 0.6827) <= 1e-4,
         fmt("approx %.6f, exact %.6f, err %.2e", di.approx, di.exact, di.abs_err));
  const double e_small = dml_integral(100, Rational(1, 20), -1, 1).abs_err;
  const double e_half = dml_integral(100, Rational(1, 2), -1, 1).abs_err;
  report("numeric/dml-integral-small-p-worse", e_small > e_half, fmt("p=0.05 %.4f > p=0.5 %.4f", e_small, e_half));

  auto dl = dml_local(100, Rational(1, 6), 7);
  const double rel = dl.abs_err / dl.exact;
  report("numeric/dml-local-within-15%", rel <= 0.15, fmt("approx %.6f, exact %.6f, rel %.3f", dl.approx, dl.exact, rel));
  const double scale = std::sqrt(BinomialApprox(100, Rational(1, 6)).npq());
  report("numeric/dml-local-corrected-scale", std::fabs(scale - 3.727) < 5e-4, fmt("sqrt(npq) = %.5f", scale));

  auto t50 = timerding_limit_check(50, 50, -1, 1);
  auto t400 = timerding_limit_check(400, 400, -1, 1);
  report("numeric/timerding", t50.abs_err < 0.02 && t400.abs_err < t50.abs_err,
         fmt("err %.5f at 50, %.5f at 400", t50.abs_err, t400.abs_err));

  bool bl_ok = true;
  for (long n = 1; n <= 12; ++n) {
    std::vector<Rational> closed;
    for (long w = 0; w <= n; ++w) closed.push_back(Rational(binomial(n, w) * binomial(n, w), binomial(2 * n, n)));
    auto chain = bernoulli_laplace_chain(n);
    bl_ok = bl_ok && bernoulli_laplace_stationary(n) == closed && step(closed, chain) == closed;
    if (n >= 2) bl_ok = bl_ok && stationary(chain) == closed;
  }
  report("numeric/bernoulli-laplace-stationary", bl_ok, "exact for n = 1..12");

  double worst_white = 0;
  for (long n = 1; n <= 20; ++n) {
    auto p = bernoulli_laplace_chain(n).to_double();
    auto d = StateDistribution::point_mass(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n));
    for (long r = 0; r <= 100; ++r) {
      double mean = 0;
      for (long w = 0; w <= n; ++w) mean += static_cast<double>(w) * d.probabilities()[w];
      worst_white = std::max(worst_white, std::fabs(mean - expected_white(n, r)));
      d = step(d, p);
    }
  }
  report("numeric/expected-white-vs-chain", worst_white <= 1e-10, fmt("max dev %.2e", worst_white));

  double worst_tri = 0;
  for (double a : {0.5, 1.0, 2.0}) {
    auto g = GridDensity::sample(Distribution::uniform(a), 1e-3);
    auto c = convolve(g, g);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double x = c.abscissae()[i];
      worst_tri = std::max(worst_tri, std::fabs(c.ordinates()[i] - std::max(0.0, 2 * a - std::fabs(x)) / (4 * a * a)));
    }
  }
  report("numeric/uniform-conv-triangle", worst_tri <= 1e-4, fmt("max dev %.2e", worst_tri));

  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unif(-10, 10), pos(0.1, 5);
  double worst_mean_fit = 0, worst_orth = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 15;
    std::vector<std::vector<double>> ones(n, {1.0});
    std::vector<double> l(n), w(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = unif(gen);
      w[i] = -l[i];
      p[i] = pos(gen);
    }
    LinearSystem sys(ones, w);
    double mean = 0, wm = 0, ws = 0;
    for (std::size_t i = 0; i < n; ++i) {
      mean += l[i];
      wm += p[i] * l[i];
      ws += p[i];
    }
    mean /= static_cast<double>(n);
    wm /= ws;
    worst_mean_fit = std::max({worst_mean_fit, std::fabs(least_squares(sys).estimates[0] - mean),
                               std::fabs(weighted_least_squares(sys, p).estimates[0] - wm)});

    const std::size_t k = 1 + trial % 4, m = k + 3 + trial % 7;
    std::vector<std::vector<double>> a(m, std::vector<double>(k));
    std::vector<double> f(m);
    for (auto& row : a)
      for (auto& v : row) v = unif(gen);
    for (auto& v : f) v = unif(gen);
    LinearSystem gsys(a, f);
    auto fit = least_squares(gsys);
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0, scale_j = 0;
      for (std::size_t i = 0; i < m; ++i) {
        dot += a[i][j] * fit.residuals[i];
        scale_j += std::fabs(a[i][j] * fit.residuals[i]);
      }
      worst_orth = std::max(worst_orth, std::fabs(dot) / std::max(1.0, scale_j));
    }
  }
  report("numeric/lsq-single-unknown-mean", worst_mean_fit <= 1e-12, fmt("max dev %.2e", worst_mean_fit));
  report("numeric/lsq-residual-orthogonality", worst_orth <= 1e-9, fmt("max |[a v]| %.2e", worst_orth));

  LinearSystem three({{1.0}, {1.0}, {1.0}}, {-1.0, -2.0, -4.0});
  const double mm = minimax_fit(three).estimates[0];
  const double p16 = pnorm_fit(three, 16).estimates[0];
  report("numeric/pnorm16-near-minimax", std::fabs(p16 - mm) < 0.05, fmt("k=16 %.6f, minimax %.6f", p16, mm));

  timing("numeric", start, 30.0);
}

// --- 3. statistical reproductions --------------------------------------------
void statistical_group() {
  const auto start = Clock::now();
  const std::uint64_t seed = kDefaultSeed;
  auto zline = [](const SimReport& r) {
    return fmt("est %.6f, target %.6f, z %.3f", r.estimate, r.target.value_or(NAN), r.z.value_or(NAN));
  };
  auto zok = [](const SimReport& r) { return r.z && std::fabs(*r.z) < 4.0; };

  auto buffon = buffon_needle(1.0, 4.0, 1000000, RngStream(seed, 1));
  const double pi_hat = buffon.extras.at("pi_hat");
  report("statistical/buffon-frequency", zok(buffon), zline(buffon));
  report("statistical/buffon-pi-hat", std::fabs(pi_hat - std::numbers::pi) < 0.02, fmt("pi_hat %.5f", pi_hat));

  for (auto [m, stream] : {std::pair{ChordModel::endpoints, 2u}, std::pair{ChordModel::radial_midpoint, 3u},
                           std::pair{ChordModel::area_midpoint, 4u}}) {
    auto r = bertrand_chord(m, 1000000, RngStream(seed, stream));
    report("statistical/bertrand-" + to_string(m), zok(r), zline(r));
  }

  auto pm = petersburg_median(2048, 1000, RngStream(seed, 5));
  report("statistical/petersburg-median", pm.estimate >= 4 && pm.estimate <= 8,
         fmt("median of 1000 batch means %.4f", pm.estimate));

  auto qx = quincunx(20, 100000, RngStream(seed, 6));
  report("statistical/quincunx-tv", qx.tv_distance < 0.02, fmt("TV %.5f", qx.tv_distance));

  auto enc = encounter_mc(60.0, 20.0, 1000000, RngStream(seed, 7));
  report("statistical/encounter-5/9", zok(enc) && encounter_probability(Rational(60), Rational(20)) == Rational(5, 9),
         zline(enc));

  auto fr = frequency_run(0.5, 100000, {100000}, RngStream(seed, 8));
  report("statistical/frequency-run", fr.final_gap < fr.three_sigma, fmt("gap %.5f < %.5f", fr.final_gap, fr.three_sigma));

  timing("statistical", start, 60.0);
}

// --- 4. property suites -----------------------------------------------------
void property_group() {
  const auto start = Clock::now();
  std::mt19937_64 gen(77);

  long ie_cases = 0, ie_bad = 0;
  for (std::size_t size = 1; size <= 12; ++size) {
    for (int trial = 0; trial < 200; ++trial) {
      FiniteEventSpace space(size);
      const int events = 1 + static_cast<int>(gen() % 4);
      std::vector<std::string> names;
      std::vector<bool> any(size, false);
      for (int e = 0; e < events; ++e) {
        std::vector<std::size_t> cases;
        for (std::size_t c = 0; c < size; ++c)
          if (gen() % 3 == 0) {
            cases.push_back(c);
            any[c] = true;
          }
        names.push_back("E" + std::to_string(e));
        space.add_event(names.back(), cases);
      }
      const long direct = std::count(any.begin(), any.end(), true);
      ++ie_cases;
      if (union_probability(space, names) != Rational(direct, static_cast<long>(size))) ++ie_bad;
    }
  }
  report("property/inclusion-exclusion", ie_bad == 0, std::to_string(ie_cases) + " random families");

  long post_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 6);
    std::vector<Rational> priors, likes;
    long sum = 0;
    std::vector<long> weights;
    for (int i = 0; i < k; ++i) sum += weights.emplace_back(1 + static_cast<long>(gen() % 20));
    for (int i = 0; i < k; ++i) {
      priors.emplace_back(weights[i], sum);
      likes.emplace_back(static_cast<long>(gen() % 13), 12L);
    }
    if (std::all_of(likes.begin(), likes.end(), [](const Rational& r) { return r == 0; })) likes[0] = 1;
    CauseSystem sys(priors, likes);
    Rational s;
    for (const auto& r : bayes_posteriors(sys)) s += r;
    if (s != 1) ++post_bad;
  }
  report("property/posterior-normalization", post_bad == 0, "500 random cause systems sum to exactly 1");

  double ck_worst = 0;
  bool ck_exact = true;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 5;
    std::vector<std::vector<Rational>> rq(k, std::vector<Rational>(k));
    for (auto& row : rq) {
      std::vector<long> w(k);
      long sum = 0;
      for (auto& v : w) sum += (v = static_cast<long>(gen() % 5));
      if (sum == 0) w[0] = sum = 1;
      for (std::size_t j = 0; j < k; ++j) row[j] = Rational(w[j], sum);
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
    RationalTransitionMatrix pq(labels, rq);
    const long m = 1 + trial % 7, n = 1 + trial % 5;
    ck_exact = ck_exact && n_step(pq, m + n).rows() == multiply(n_step(pq, m), n_step(pq, n)).rows();
    auto pd = pq.to_double();
    auto lhs = n_step(pd, m + n), rhs = multiply(n_step(pd, m), n_step(pd, n));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) ck_worst = std::max(ck_worst, std::fabs(lhs.rows()[i][j] - rhs.rows()[i][j]));
  }
  report("property/chapman-kolmogorov", ck_exact && ck_worst < 1e-12, fmt("exact, float dev %.1e", ck_worst));

  bool cheb_ok = true;
  long cheb_cases = 0;
  for (double beta : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    auto nd = Distribution::normal(1.0, 2.0);
    cheb_ok = cheb_ok && chebyshev_bound(2.0, beta) <= cdf(nd, 1.0 + beta) - cdf(nd, 1.0 - beta) + 1e-15;
    auto ud = Distribution::uniform(2.0);
    const double us = std::sqrt(moments(ud).variance);
    cheb_ok = cheb_ok && chebyshev_bound(us, beta) <= cdf(ud, beta) - cdf(ud, -beta) + 1e-15;
    const long n = 30;
    auto bd = Distribution::binomial(n, Rational(1, 3));
    const double bs = std::sqrt(moments(bd).variance), np = 10.0;
    double inside = 0;
    for (long x = 0; x <= n; ++x)
      if (std::fabs(static_cast<double>(x) - np) < beta * bs) inside += mass_or_density(bd, static_cast<double>(x));
    cheb_ok = cheb_ok && chebyshev_bound(bs, beta * bs) <= inside + 1e-15;
    cheb_cases += 3;
  }
  report("property/chebyshev-bound-validity", cheb_ok, std::to_string(cheb_cases) + " cases over three families");

  double aff_worst = 0;
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(5 + trial % 50);
    for (auto& x : v) x = 3.0 * z(gen) + 1.0;
    const double a = 10.0 * z(gen), b = 4.0 * z(gen);
    std::vector<double> shifted, scaled;
    for (double x : v) {
      shifted.push_back(a + x);
      scaled.push_back(b * x);
    }
    const double var = sample_stats(Sample(v)).variance;
    aff_worst = std::max({aff_worst, std::fabs(sample_stats(Sample(shifted)).variance - var) / var,
                          std::fabs(sample_stats(Sample(scaled)).variance - b * b * var) / (b * b * var)});
  }
  report("property/affine-variance-laws", aff_worst < 1e-9, fmt("max rel dev %.1e", aff_worst));

  bool corr_bounds = true;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<double, double>> pairs;
    const double rho = std::uniform_real_distribution<double>(-1, 1)(gen);
    for (int i = 0; i < 3 + trial % 40; ++i) {
      const double x = z(gen);
      pairs.emplace_back(x, rho * x + 0.3 * z(gen));
    }
    const double r = correlation(pairs);
    corr_bounds = corr_bounds && r >= -1.0 - 1e-12 && r <= 1.0 + 1e-12;
  }
  std::vector<std::pair<double, double>> sym;
  for (int k = -50; k <= 50; ++k) sym.emplace_back(k / 10.0, (k / 10.0) * (k / 10.0));
  const double zero = correlation(sym);
  report("property/correlation-bounds", corr_bounds, "300 random samples within [-1, 1]");
  report("property/eta-xi-squared-uncorrelated", std::fabs(zero) < 1e-12, fmt("r = %.2e", zero));

  timing("property", start, 60.0);
}

}  // namespace

int main() {
  exact_group();
  numeric_group();
  statistical_group();
  property_group();
  std::printf("%d/%d criteria passed\n", total - failures, total);
  return failures == 0 ? 0 : 1;
}
