#include "classprob/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "classprob/distributions.hpp"
#include "classprob/errors.hpp"
#include "classprob/estimation.hpp"
#include "classprob/exact.hpp"
#include "classprob/limits.hpp"
#include "classprob/markov.hpp"
#include "classprob/montecarlo.hpp"
#include "classprob/rng.hpp"
#include "classprob/transforms.hpp"

namespace classprob {

namespace {

using nlohmann::ordered_json;

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string rat(const Rational& r) {
  if (r.is_integer()) return r.str();
  return r.to_significant(6) + " (" + r.str() + ")";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

long reps_or(const RunContext& ctx, long fallback) { return ctx.reps.value_or(fallback); }

Outcome exact_match(const std::vector<Rational>& got, const std::vector<Rational>& want) {
  std::vector<std::string> g, w;
  for (const auto& r : got) g.push_back(rat(r));
  for (const auto& r : want) w.push_back(rat(r));
  return {join(g), join(w), got == want};
}

Outcome within(double got, double want, double tol, int digits = 8) {
  return {num(got, digits), num(want, digits) + " +- " + num(tol, 2), std::fabs(got - want) <= tol};
}

// Statistical scenarios pass on |z| < 4 against the known target.
Outcome z_bound(const SimReport& r) {
  const double z = r.z.value_or(0.0);
  std::string computed = num(r.estimate) + " (se " + num(r.standard_error, 3) + ", z " + num(z, 3) +
                         ", n " + std::to_string(r.replications) + ")";
  return {computed, num(*r.target) + ", |z| < 4", r.z.has_value() && std::fabs(z) < 4.0};
}

std::vector<Scenario> build_registry() {
  using K = ScenarioKind;
  std::vector<Scenario> s;

  // --- exact -------------------------------------------------------------
  s.push_back({"galileo-dice", "classical/three-dice", K::exact, "exact", [](const RunContext&) {
                 const BigInt nine = dice_sum_count(3, 6, 9), ten = dice_sum_count(3, 6, 10);
                 return Outcome{nine.get_str() + "/216 (9 points), " + ten.get_str() + "/216 (10 points)",
                                "25/216 (9 points), 27/216 (10 points)", nine == 25 && ten == 27};
               }});
  s.push_back({"two-rolls-union", "classical/addition", K::exact, "exact", [](const RunContext&) {
                 FiniteEventSpace space(36);
                 space.add_event("six first", [](std::size_t c) { return c / 6 == 5; });
                 space.add_event("six second", [](std::size_t c) { return c % 6 == 5; });
                 return exact_match({union_probability(space, {"six first", "six second"})}, {Rational(11, 36)});
               }});
  auto three_urns = [] {
    return CauseSystem({Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                       {Rational(1, 3), Rational(2, 3), Rational(3, 8)});
  };
  s.push_back({"total-probability", "classical/total-probability", K::exact, "exact", [three_urns](const RunContext&) {
                 return exact_match({total_probability(three_urns())}, {Rational(11, 24)});
               }});
  s.push_back({"bayes-three-urns", "classical/bayes", K::exact, "exact", [three_urns](const RunContext&) {
                 auto post = bayes_posteriors(three_urns());
                 std::vector<Rational> want{Rational(8, 33), Rational(16, 33), Rational(9, 33)};
                 Outcome o = exact_match(post, want);
                 o.expected += " = 8:16:9";
                 return o;
               }});
  s.push_back({"points-division", "classical/points", K::exact, "exact", [](const RunContext&) {
                 return exact_match({points_division(1, 2, Rational(1, 2))}, {Rational(3, 4)});
               }});
  s.push_back({"ruin-ratio", "classical/ruin", K::exact, "exact", [](const RunContext&) {
                 auto r = ruin_chances(12, 12, Rational(5, 14), Rational(9, 14));
                 Rational want(pow(Rational(5), 12).numerator(), pow(Rational(9), 12).numerator());
                 Outcome o = exact_match({r.a / r.b}, {want});
                 o.expected += " = 5^12:9^12";
                 return o;
               }});
  s.push_back({"huygens-draw", "classical/hypergeometric", K::exact, "exact", [](const RunContext&) {
                 return exact_match({huygens_draw(12, 4, 7, 3)}, {Rational(35, 99)});
               }});
  s.push_back({"de-mere", "classical/de-mere", K::exact, "3 decimals", [](const RunContext&) {
                 auto [one_die, two_dice] = de_mere();
                 const std::string a = one_die.to_fixed(3), b = two_dice.to_fixed(3);
                 const std::string d = (one_die - two_dice).to_fixed(3);
                 return Outcome{a + " / " + b + ", difference " + d + " [" + one_die.str() + ", " + two_dice.str() + "]",
                                "0.518 / 0.491, difference 0.026 (the printed 0.492 does not round from 0.491403)",
                                a == "0.518" && b == "0.491" && d == "0.026"};
               }});
  s.push_back({"binomial-pmf", "distributions/binomial", K::exact, "exact", [](const RunContext&) {
                 return exact_match({exact_mass(Distribution::binomial(4, Rational(1, 6)), 2)}, {Rational(25, 216)});
               }});
  s.push_back({"poisson-urn", "classical/poisson-urn", K::exact, "exact, n = 1..100", [](const RunContext&) {
                 long bad = 0;
                 for (long n = 1; n <= 100; ++n)
                   if (poisson_urn(n) != Rational(1, 2)) ++bad;
                 return Outcome{bad ? std::to_string(bad) + " of 100 differ from 1/2" : "1/2 for every n = 1..100",
                                "1/2 for every n = 1..100", bad == 0};
               }});
  s.push_back({"bervi-coverage", "estimation/bervi", K::exact, "exact, n = 2..30", [](const RunContext&) {
                 long bad = 0;
                 for (long n = 2; n <= 30; ++n)
                   if (bervi_coverage(n) != 1 - Rational(BigInt(1), BigInt(1) << (n - 1))) ++bad;
                 return Outcome{bad ? std::to_string(bad) + " of 29 differ" : "1 - 1/2^(n-1) for n = 2..30, n=5: " + rat(bervi_coverage(5)),
                                "1 - 1/2^(n-1), n=5: " + rat(Rational(15, 16)), bad == 0};
               }});
  s.push_back({"encounter", "geometric/encounter", K::exact, "exact", [](const RunContext&) {
                 return exact_match({encounter_probability(Rational(60), Rational(20))}, {Rational(5, 9)});
               }});
  s.push_back({"bayes-posterior-mass", "limits/bayes-posterior", K::exact, "exact", [](const RunContext&) {
                 return exact_match({bayes_posterior_mass({1, 0, Rational(0), Rational(1, 2)}),
                                     bayes_posterior_mass({0, 0, Rational(3, 10), Rational(7, 10)})},
                                    {Rational(1, 4), Rational(2, 5)});
               }});
  s.push_back({"bernoulli-laplace-stationary", "markov/bernoulli-laplace", K::exact, "exact, n = 1..12", [](const RunContext&) {
                 long bad = 0;
                 // n = 1 is periodic, so only the balance equations are checked there.
                 for (long n = 1; n <= 12; ++n) {
                   std::vector<Rational> closed;
                   for (long w = 0; w <= n; ++w)
                     closed.push_back(Rational(binomial(n, w) * binomial(n, w), binomial(2 * n, n)));
                   auto chain = bernoulli_laplace_chain(n);
                   if (step(closed, chain) != closed) ++bad;
                   if (n >= 2 && stationary(chain) != closed) ++bad;
                 }
                 return Outcome{bad ? std::to_string(bad) + " entries differ" : "C(n,w)^2/C(2n,n) for n = 1..12",
                                "C(n,w)^2/C(2n,n) for n = 1..12", bad == 0};
               }});

  // --- numeric -----------------------------------------------------------
  s.push_back({"neglect-threshold", "distributions/petersburg", K::numeric, "[13.28, 13.30]", [](const RunContext&) {
                 const double t = neglect_threshold(1e-4);
                 return Outcome{num(t, 8), "[13.28, 13.30]", t >= 13.28 && t <= 13.30};
               }});
  s.push_back({"normal-table", "distributions/normal-table", K::numeric, "abs 5e-5", [](const RunContext&) {
                 return within(normal_table(3.0), 0.49865, 5e-5);
               }});
  s.push_back({"normal-quantile", "distributions/probable-error", K::numeric, "abs 5e-5", [](const RunContext&) {
                 return within(quantile(Distribution::normal(0, 1), 0.75), 0.67449, 5e-5);
               }});
  s.push_back({"normal-moments", "distributions/moments", K::numeric, "abs 1e-8 (mean, var), 1e-6 (m4)", [](const RunContext&) {
                 const double a = 1.5, sigma = 2.0;
                 auto m = quadrature_moments(Distribution::normal(a, sigma));
                 const double m4 = 3.0 * std::pow(sigma, 4);
                 return Outcome{"mean " + num(m.mean, 12) + ", var " + num(m.variance, 12) + ", m4 " + num(m.fourth_central, 12),
                                "mean 1.5, var 4, m4 48",
                                std::fabs(m.mean - a) < 1e-8 && std::fabs(m.variance - sigma * sigma) < 1e-8 &&
                                    std::fabs(m.fourth_central - m4) < 1e-6};
               }});
  s.push_back({"dml-integral", "limits/de-moivre-laplace", K::numeric, "abs 1e-4 (approx), 0.01 (error)", [](const RunContext&) {
                 auto r = dml_integral(10000, Rational(1, 2), -1.0, 1.0);
                 return Outcome{"approx " + num(r.approx, 8) + ", exact " + num(r.exact, 8) + ", error " + num(r.abs_err, 3),
                                "approx 0.6827 +- 1e-4, error < 0.01",
                                std::fabs(r.approx - 0.6827) <= 1e-4 && r.abs_err < 0.01};
               }});
  s.push_back({"dml-integral-small-p", "limits/de-moivre-laplace", K::numeric, "strict order", [](const RunContext&) {
                 const double e5 = dml_integral(100, Rational(1, 20), -1.0, 1.0).abs_err;
                 const double e50 = dml_integral(100, Rational(1, 2), -1.0, 1.0).abs_err;
                 return Outcome{"error p=0.05: " + num(e5, 4) + ", p=0.5: " + num(e50, 4),
                                "error at p=0.05 > error at p=0.5 (n = 100)", e5 > e50};
               }});
  s.push_back({"dml-local", "limits/de-moivre-laplace", K::numeric, "rel 15%", [](const RunContext&) {
                 auto r = dml_local(100, Rational(1, 6), 7);
                 const double rel = r.abs_err / r.exact;
                 return Outcome{"approx " + num(r.approx, 6) + ", exact " + num(r.exact, 6) + ", rel error " + num(rel, 3),
                                "rel error <= 0.15", rel <= 0.15};
               }});
  s.push_back({"dml-local-erratum", "limits/de-moivre-laplace", K::numeric, "abs 5e-4", [](const RunContext&) {
                 BinomialApprox b(100, Rational(1, 6));
                 const double scale = std::sqrt(b.npq());
                 return Outcome{"npq " + num(b.npq(), 6) + ", sqrt(npq) " + num(scale, 6),
                                "sqrt(npq) 3.727 +- 5e-4 (13.9 is npq, not its root)",
                                std::fabs(scale - 3.727) <= 5e-4};
               }});
  s.push_back({"nb-bound", "limits/nikolaus-bernoulli", K::numeric, "abs 5e-5", [](const RunContext&) {
                 return within(nb_bound(1.0), 0.3935, 5e-5);
               }});
  s.push_back({"sample-size", "limits/large-numbers", K::numeric, "exact_n <= chebyshev_n = 250", [](const RunContext&) {
                 auto r = bernoulli_sample_size(Rational(1, 2), Rational(1, 10), Rational(1, 10));
                 return Outcome{"chebyshev " + std::to_string(r.chebyshev_n) + ", exact " + std::to_string(r.exact_n),
                                "chebyshev 250, exact <= 250", r.chebyshev_n == 250 && r.exact_n <= r.chebyshev_n};
               }});
  s.push_back({"timerding", "limits/bayes-normal", K::numeric, "abs 0.02, decreasing", [](const RunContext&) {
                 auto small = timerding_limit_check(50, 50, -1.0, 1.0);
                 auto large = timerding_limit_check(400, 400, -1.0, 1.0);
                 return Outcome{"error (50,50) " + num(small.abs_err, 4) + ", (400,400) " + num(large.abs_err, 4),
                                "error (50,50) < 0.02 and larger than at (400,400)",
                                small.abs_err < 0.02 && large.abs_err < small.abs_err};
               }});
  s.push_back({"expected-white", "markov/bernoulli-laplace", K::numeric, "abs 1e-10, n <= 20, r <= 100", [](const RunContext&) {
                 double worst = 0.0;
                 for (long n = 1; n <= 20; ++n) {
                   auto p = bernoulli_laplace_chain(n).to_double();
                   auto d = StateDistribution::point_mass(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n));
                   for (long r = 0; r <= 100; ++r) {
                     double mean = 0.0;
                     for (long w = 0; w <= n; ++w) mean += static_cast<double>(w) * d.probabilities()[w];
                     worst = std::max(worst, std::fabs(mean - expected_white(n, r)));
                     d = step(d, p);
                   }
                 }
                 return Outcome{"max deviation " + num(worst, 3), "<= 1e-10", worst <= 1e-10};
               }});
  s.push_back({"uniform-convolution", "transforms/composition", K::numeric, "abs 1e-4", [](const RunContext&) {
                 double worst = 0.0;
                 for (double a : {0.5, 1.0, 2.0}) {
                   auto u = GridDensity::sample(Distribution::uniform(a), 1e-3);
                   auto t = convolve(u, u);
                   auto tri = Distribution::triangular(2.0 * a);
                   for (std::size_t i = 0; i < t.size(); ++i)
                     worst = std::max(worst, std::fabs(t.ordinates()[i] - mass_or_density(tri, t.abscissae()[i])));
                 }
                 return Outcome{"max deviation " + num(worst, 3), "<= 1e-4", worst <= 1e-4};
               }});
  s.push_back({"least-squares-mean", "estimation/least-squares", K::numeric, "abs 1e-12", [](const RunContext&) {
                 const std::vector<double> obs{10.2, 9.7, 10.5, 9.9, 10.1}, weights{1, 2, 1, 3, 2};
                 std::vector<std::vector<double>> ones(obs.size(), std::vector<double>{1.0});
                 std::vector<double> w;
                 for (double o : obs) w.push_back(-o);
                 LinearSystem sys(ones, w);
                 double mean = 0, wmean = 0, wsum = 0;
                 for (std::size_t i = 0; i < obs.size(); ++i) {
                   mean += obs[i] / static_cast<double>(obs.size());
                   wmean += weights[i] * obs[i];
                   wsum += weights[i];
                 }
                 wmean /= wsum;
                 const double x = least_squares(sys).estimates[0];
                 const double xw = weighted_least_squares(sys, weights).estimates[0];
                 return Outcome{num(x, 15) + ", weighted " + num(xw, 15), num(mean, 15) + ", weighted " + num(wmean, 15),
                                std::fabs(x - mean) <= 1e-12 && std::fabs(xw - wmean) <= 1e-12};
               }});
  s.push_back({"pnorm-minimax", "estimation/minimax", K::numeric, "abs 0.05", [](const RunContext&) {
                 LinearSystem sys({{1.0}, {1.0}, {1.0}}, {-1.0, -2.0, -4.0});
                 const double mm = minimax_fit(sys).estimates[0];
                 const double p16 = pnorm_fit(sys, 16).estimates[0];
                 return Outcome{"k=16: " + num(p16, 8) + ", minimax " + num(mm, 8), "within 0.05 of minimax 2.5",
                                std::fabs(mm - 2.5) < 1e-12 && std::fabs(p16 - mm) < 0.05};
               }});

  // --- statistical -------------------------------------------------------
  s.push_back({"buffon", "geometric/buffon", K::statistical, "|z| < 4, |pi_hat - pi| < 0.02", [](const RunContext& c) {
                 auto r = buffon_needle(1.0, 4.0, reps_or(c, 1000000), RngStream(c.seed, 1), c.lanes);
                 Outcome o = z_bound(r);
                 const double pi_hat = r.extras.at("pi_hat");
                 o.computed += ", pi_hat " + num(pi_hat, 6);
                 o.expected += ", pi_hat within 0.02 of pi";
                 o.pass = o.pass && std::fabs(pi_hat - std::numbers::pi) < 0.02;
                 return o;
               }});
  const std::pair<ChordModel, std::uint64_t> chords[] = {
      {ChordModel::endpoints, 2}, {ChordModel::radial_midpoint, 3}, {ChordModel::area_midpoint, 4}};
  for (auto [model, stream] : chords) {
    s.push_back({"bertrand-" + to_string(model), "geometric/bertrand", K::statistical, "|z| < 4",
                 [model, stream](const RunContext& c) {
                   return z_bound(bertrand_chord(model, reps_or(c, 1000000), RngStream(c.seed, stream), c.lanes));
                 }});
  }
  s.push_back({"petersburg-median", "distributions/petersburg", K::statistical, "median in [4, 8]", [](const RunContext& c) {
                 auto r = petersburg_median(2048, reps_or(c, 1000), RngStream(c.seed, 5), c.lanes);
                 return Outcome{"median of batch means " + num(r.estimate, 6) + " (q25 " + num(r.extras.at("q25"), 4) +
                                    ", q75 " + num(r.extras.at("q75"), 4) + ")",
                                "[4, 8], bracketing 4.9", r.estimate >= 4.0 && r.estimate <= 8.0};
               }});
  s.push_back({"quincunx", "distributions/quincunx", K::statistical, "TV < 0.02", [](const RunContext& c) {
                 auto r = quincunx(20, reps_or(c, 100000), RngStream(c.seed, 6), c.lanes);
                 return Outcome{"TV distance " + num(r.tv_distance, 4), "< 0.02 to Binomial(20, 1/2)", r.tv_distance < 0.02};
               }});
  s.push_back({"encounter-mc", "geometric/encounter", K::statistical, "|z| < 4", [](const RunContext& c) {
                 return z_bound(encounter_mc(60.0, 20.0, reps_or(c, 1000000), RngStream(c.seed, 7), c.lanes));
               }});
  s.push_back({"frequency-run", "classical/frequency", K::statistical, "gap < 3 sigma", [](const RunContext& c) {
                 const long n = reps_or(c, 100000);
                 auto r = frequency_run(0.5, n, {n}, RngStream(c.seed, 8));
                 return Outcome{"final gap " + num(r.final_gap, 4) + " (n " + std::to_string(n) + ")",
                                "< 3 sqrt(pq/n) = " + num(r.three_sigma, 4), r.final_gap < r.three_sigma};
               }});
  s.push_back({"bervi-mc", "estimation/bervi", K::statistical, "|z| < 4", [](const RunContext& c) {
                 return z_bound(range_covers_median_mc(5, reps_or(c, 1000000), RngStream(c.seed, 9), c.lanes));
               }});

  std::sort(s.begin(), s.end(), [](const Scenario& a, const Scenario& b) { return a.id < b.id; });
  return s;
}

Report execute(const Scenario& sc, const RunContext& ctx) {
  Report r{sc.id, sc.section, "", "", false, sc.kind, 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = sc.run(ctx);
    r.computed = std::move(o.computed);
    r.expected = std::move(o.expected);
    r.pass = o.pass;
  } catch (const std::exception& e) {
    r.computed = std::string("error: ") + e.what();
    r.pass = false;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ordered_json report_json(const Report& r, bool timing) {
  ordered_json j;
  j["scenario"] = r.scenario;
  j["section"] = r.section;
  j["computed"] = r.computed;
  j["expected"] = r.expected;
  j["pass"] = r.pass;
  j["kind"] = to_string(r.kind);
  j["elapsed_ms"] = timing ? r.elapsed_ms : 0.0;
  return j;
}

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::exact: return "exact";
    case ScenarioKind::numeric: return "numeric";
    case ScenarioKind::statistical: return "statistical";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(const std::string& tag) {
  for (auto k : {ScenarioKind::exact, ScenarioKind::numeric, ScenarioKind::statistical})
    if (to_string(k) == tag) return k;
  throw ParameterError("unknown scenario kind: " + tag);
}

const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = build_registry();
  return registry;
}

Report run_scenario(const std::string& id, const RunContext& ctx) {
  const auto& reg = scenario_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const Scenario& s) { return s.id == id; });
  if (it == reg.end()) throw LookupError("unknown scenario: " + id);
  return execute(*it, ctx);
}

bool SuiteResult::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
}

SuiteResult reproduce_all(const RunContext& ctx, std::optional<ScenarioKind> only) {
  SuiteResult out;
  for (const auto& sc : scenario_registry()) {
    if (only && sc.kind != *only) continue;
    out.reports.push_back(execute(sc, ctx));
    auto& t = out.tally[sc.kind];
    ++t.total;
    if (out.reports.back().pass) ++t.passed;
  }
  return out;
}

std::string to_json(const Report& r) { return report_json(r, true).dump(); }

Report report_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.section = j.at("section").get<std::string>();
    r.computed = j.at("computed").get<std::string>();
    r.expected = j.at("expected").get<std::string>();
    r.pass = j.at("pass").get<bool>();
    r.kind = parse_scenario_kind(j.at("kind").get<std::string>());
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed report: ") + e.what());
  }
}

std::string to_json(const SuiteResult& s, bool timing) {
  ordered_json j;
  j["reports"] = ordered_json::array();
  for (const auto& r : s.reports) j["reports"].push_back(report_json(r, timing));
  ordered_json summary = ordered_json::object();
  for (const auto& [kind, t] : s.tally) summary[to_string(kind)] = {{"passed", t.passed}, {"total", t.total}};
  j["summary"] = summary;
  j["pass"] = s.all_pass();
  return j.dump(2) + "\n";
}

std::string to_table(const SuiteResult& s) {
  std::ostringstream os;
  std::size_t width = 8;
  for (const auto& r : s.reports) width = std::max(width, r.scenario.size());
  for (const auto& r : s.reports) {
    os << (r.pass ? "PASS  " : "FAIL  ") << r.scenario << std::string(width - r.scenario.size() + 2, ' ')
       << r.computed << "\n" << std::string(width + 8, ' ') << "expected " << r.expected << "\n";
  }
  for (const auto& [kind, t] : s.tally) os << to_string(kind) << ": " << t.passed << "/" << t.total << " passed\n";
  return os.str();
}

void emit_normal_table(std::ostream& os, double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(from) || !std::isfinite(to)) throw ParameterError("table needs finite bounds and step > 0");
  os << "z,value\n";
  if (to < from) return;
  const long rows = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  char buf[64];
  for (long i = 0; i < rows; ++i) {
    const double z = from + static_cast<double>(i) * step;
    std::snprintf(buf, sizeof buf, "%.2f,%.10f\n", z, normal_table(z));
    os << buf;
  }
}

}  // namespace classprob
