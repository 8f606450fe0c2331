// classprob command-line front end.
//
// Exit codes: 0 success (all scenarios pass), 1 a scenario or check failed,
// 2 usage error or invalid parameters.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "classprob/distributions.hpp"
#include "classprob/errors.hpp"
#include "classprob/estimation.hpp"
#include "classprob/exact.hpp"
#include "classprob/limits.hpp"
#include "classprob/markov.hpp"
#include "classprob/montecarlo.hpp"
#include "classprob/rng.hpp"
#include "classprob/scenarios.hpp"
#include "classprob/transforms.hpp"

using namespace classprob;
using nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string format = "table";
  std::optional<long> reps;
  unsigned lanes = 0;
};

// Key/value results printed either as JSON or as aligned "key  value" rows.
class Output {
public:
  explicit Output(const Globals& g) : json_(g.format == "json") {}
  template <class T>
  Output& add(const std::string& key, const T& value) {
    data_[key] = value;
    return *this;
  }
  void print() const {
    if (json_) {
      std::cout << data_.dump(2) << "\n";
      return;
    }
    std::size_t width = 0;
    for (auto it = data_.begin(); it != data_.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = data_.begin(); it != data_.end(); ++it) {
      std::string v = it->is_string() ? it->get<std::string>() : it->dump();
      std::cout << it.key() << std::string(width - it.key().size() + 2, ' ') << v << "\n";
    }
  }

private:
  bool json_;
  ordered_json data_ = ordered_json::object();
};

Rational q(const std::string& text) { return Rational::parse(text); }

std::string rat(const Rational& r) { return r.str() + " = " + r.to_significant(6); }

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw ParameterError("cannot write " + path);
  return &file;
}

Distribution make_distribution(const std::string& fam, double a, long n, const std::string& p, double rate,
                               double mean, double sigma, long big_n, long big_m) {
  if (fam == "uniform") return Distribution::uniform(a);
  if (fam == "triangular") return Distribution::triangular(a);
  if (fam == "binomial") return Distribution::binomial(n, q(p));
  if (fam == "poisson") return Distribution::poisson(rate);
  if (fam == "hypergeometric") return Distribution::hypergeometric(big_n, big_m, n);
  if (fam == "normal") return Distribution::normal(mean, sigma);
  if (fam == "half-cauchy") return Distribution::half_cauchy();
  throw ParameterError("unknown family: " + fam);
}

void print_sim(const Globals& g, const SimReport& r) {
  if (g.format == "json") {
    std::cout << to_json(r) << "\n";
    return;
  }
  Output out(g);
  out.add("simulation", r.name).add("seed", r.seed).add("n", r.replications).add("estimate", r.estimate);
  out.add("se", r.standard_error);
  if (r.target) out.add("target", *r.target);
  if (r.z) out.add("z", *r.z);
  for (const auto& [k, v] : r.extras) out.add(k, v);
  out.print();
}

RunContext context(const Globals& g) { return RunContext{g.seed, g.reps, g.lanes}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical probability: exact combinatorics, distributions, limit theorems, "
               "Monte Carlo, Markov chains and observation fitting"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed for Monte Carlo (default 0x5EED)")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--reps", g.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
  app.add_option("--lanes", g.lanes, "Worker threads for Monte Carlo (0 = hardware)");

  int status = 0;

  // --- classic ----------------------------------------------------------
  auto* classic = app.add_subcommand("classic", "Exact classical-probability problems");
  classic->require_subcommand(1);
  {
    auto* dice = classic->add_subcommand("dice", "Ways for `dice` dice to total `target`");
    static int ndice = 3, faces = 6;
    static long target = 9;
    dice->add_option("--dice", ndice)->capture_default_str();
    dice->add_option("--faces", faces)->capture_default_str();
    dice->add_option("--target", target)->capture_default_str();
    dice->callback([&] {
      BigInt ways = dice_sum_count(ndice, faces, target);
      BigInt total = 1;
      for (int i = 0; i < ndice; ++i) total *= faces;
      Output(g).add("ways", ways.get_str()).add("total", total.get_str()).add("probability", rat(Rational(ways, total))).print();
    });

    auto* points = classic->add_subcommand("points", "Fair division of stakes in an interrupted game");
    static int need_a = 1, need_b = 2;
    static std::string pp = "1/2";
    points->add_option("--a", need_a, "Rounds A still needs")->capture_default_str();
    points->add_option("--b", need_b, "Rounds B still needs")->capture_default_str();
    points->add_option("--p", pp, "A's chance per round")->capture_default_str();
    points->callback([&] { Output(g).add("share_a", rat(points_division(need_a, need_b, q(pp)))).print(); });

    auto* ruin = classic->add_subcommand("ruin", "Gambler's ruin with counters");
    static int ca = 12, cb = 12;
    static std::string pa = "5/14", pb = "9/14";
    ruin->add_option("--a", ca)->capture_default_str();
    ruin->add_option("--b", cb)->capture_default_str();
    ruin->add_option("--pa", pa)->capture_default_str();
    ruin->add_option("--pb", pb)->capture_default_str();
    ruin->callback([&] {
      auto r = ruin_chances(ca, cb, q(pa), q(pb));
      Output(g).add("a", rat(r.a)).add("b", rat(r.b)).add("ratio", rat(r.a / r.b)).print();
    });

    auto* mere = classic->add_subcommand("de-mere", "One six in 4 throws vs a double six in 24");
    mere->callback([&] {
      auto [a, b] = de_mere();
      Output(g).add("one_die", rat(a)).add("two_dice", rat(b)).add("difference", rat(a - b)).print();
    });

    auto* bayes = classic->add_subcommand("bayes", "Total probability and posteriors of causes");
    static std::vector<std::string> priors{"1/3", "1/3", "1/3"}, likes{"1/3", "2/3", "3/8"};
    bayes->add_option("--priors", priors)->capture_default_str();
    bayes->add_option("--likelihoods", likes)->capture_default_str();
    bayes->callback([&] {
      std::vector<Rational> pr, li;
      for (const auto& s : priors) pr.push_back(q(s));
      for (const auto& s : likes) li.push_back(q(s));
      CauseSystem sys(pr, li);
      std::vector<std::string> post;
      for (const auto& r : bayes_posteriors(sys)) post.push_back(rat(r));
      Output(g).add("total", rat(total_probability(sys))).add("posteriors", post).print();
    });

    auto* draw = classic->add_subcommand("draw", "m marked among n drawn from N with M marked");
    static long dn = 12, dm = 4, dd = 7, dk = 3;
    draw->add_option("--N", dn)->capture_default_str();
    draw->add_option("--M", dm)->capture_default_str();
    draw->add_option("--n", dd)->capture_default_str();
    draw->add_option("--m", dk)->capture_default_str();
    draw->callback([&] { Output(g).add("probability", rat(huygens_draw(dn, dm, dd, dk))).print(); });
  }

  // --- dist -------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "Evaluate a distribution");
  static std::string fam = "normal", op = "moments", dp = "1/2";
  static double da = 1.0, rate = 1.0, mean = 0.0, sigma = 1.0, x = 0.0;
  static long dn = 10, bigN = 10, bigM = 5;
  dist->add_option("op", op, "mass | cdf | quantile | moments")
      ->check(CLI::IsMember({"mass", "cdf", "quantile", "moments"}))
      ->capture_default_str();
  dist->add_option("--family", fam, "uniform | triangular | binomial | poisson | hypergeometric | normal | half-cauchy")
      ->capture_default_str();
  dist->add_option("--a", da, "Half-width (uniform, triangular)");
  dist->add_option("--n", dn, "Trials or draws");
  dist->add_option("--p", dp, "Success probability (binomial)");
  dist->add_option("--rate", rate);
  dist->add_option("--mean", mean);
  dist->add_option("--sigma", sigma);
  dist->add_option("--N", bigN, "Population (hypergeometric)");
  dist->add_option("--M", bigM, "Marked items (hypergeometric)");
  dist->add_option("--x", x, "Point or probability level");
  dist->callback([&] {
    auto d = make_distribution(fam, da, dn, dp, rate, mean, sigma, bigN, bigM);
    Output out(g);
    out.add("distribution", d.name());
    if (op == "mass") out.add("x", x).add("value", mass_or_density(d, x));
    if (op == "cdf") out.add("x", x).add("value", cdf(d, x));
    if (op == "quantile") out.add("p", x).add("value", quantile(d, x));
    if (op == "moments") {
      auto m = moments(d);
      out.add("mean", m.mean).add("variance", m.variance).add("third_central", m.third_central);
      out.add("fourth_central", std::isinf(m.fourth_central) ? ordered_json("inf") : ordered_json(m.fourth_central));
    }
    out.print();
  });

  // --- limit ------------------------------------------------------------
  auto* limit = app.add_subcommand("limit", "Limit theorems against exact binomial sums");
  limit->require_subcommand(1);
  {
    static long n = 100, mu = 7, hits = 50, misses = 50;
    static std::string p = "1/6", eps = "1/10", delta = "1/10", lower = "0", upper = "1";
    static double a = -1.0, b = 1.0;
    auto* local = limit->add_subcommand("local", "Local normal approximation at mu");
    local->add_option("--n", n)->capture_default_str();
    local->add_option("--p", p)->capture_default_str();
    local->add_option("--mu", mu)->capture_default_str();
    local->callback([&] {
      auto r = dml_local(n, q(p), mu);
      Output(g).add("approx", r.approx).add("exact", r.exact).add("abs_err", r.abs_err).print();
    });
    auto* integral = limit->add_subcommand("integral", "Integral normal approximation on [a, b]");
    integral->add_option("--n", n)->capture_default_str();
    integral->add_option("--p", p)->capture_default_str();
    integral->add_option("--a", a)->capture_default_str();
    integral->add_option("--b", b)->capture_default_str();
    integral->callback([&] {
      auto r = dml_integral(n, q(p), a, b);
      Output(g).add("approx", r.approx).add("exact", r.exact).add("abs_err", r.abs_err).print();
    });
    auto* size = limit->add_subcommand("sample-size", "Trials for P(|mu/n - p| > eps) <= delta");
    size->add_option("--p", p)->capture_default_str();
    size->add_option("--eps", eps)->capture_default_str();
    size->add_option("--delta", delta)->capture_default_str();
    size->callback([&] {
      auto r = bernoulli_sample_size(q(p), q(eps), q(delta));
      Output(g).add("chebyshev_n", r.chebyshev_n).add("exact_n", r.exact_n).print();
    });
    auto* posterior = limit->add_subcommand("posterior", "Posterior mass of [lower, upper] after hits/misses");
    posterior->add_option("--hits", hits)->capture_default_str();
    posterior->add_option("--misses", misses)->capture_default_str();
    posterior->add_option("--lower", lower)->capture_default_str();
    posterior->add_option("--upper", upper)->capture_default_str();
    posterior->callback([&] {
      Output(g).add("mass", rat(bayes_posterior_mass({hits, misses, q(lower), q(upper)}))).print();
    });
    auto* timerding = limit->add_subcommand("timerding", "Posterior of a standardized interval vs the normal law");
    timerding->add_option("--hits", hits)->capture_default_str();
    timerding->add_option("--misses", misses)->capture_default_str();
    timerding->add_option("--a", a)->capture_default_str();
    timerding->add_option("--b", b)->capture_default_str();
    timerding->callback([&] {
      auto r = timerding_limit_check(hits, misses, a, b);
      Output(g).add("posterior", r.posterior_prob).add("normal", r.normal_prob).add("abs_err", r.abs_err).print();
    });
  }

  // --- mc ---------------------------------------------------------------
  auto* mc = app.add_subcommand("mc", "Seeded Monte Carlo experiments");
  mc->require_subcommand(1);
  {
    static double r = 1.0, spacing = 4.0, window = 60.0, wait = 20.0, p = 0.5;
    static std::string model = "endpoints";
    static int rows = 20, bervi_n = 5;
    static long games = 2048;
    auto reps = [&](long fallback) { return g.reps.value_or(fallback); };
    auto* buffon = mc->add_subcommand("buffon", "Needle of length 2r on lines a apart");
    buffon->add_option("--r", r)->capture_default_str();
    buffon->add_option("--a", spacing)->capture_default_str();
    buffon->callback([&] { print_sim(g, buffon_needle(r, spacing, reps(1000000), RngStream(g.seed, 1), g.lanes)); });
    auto* bertrand = mc->add_subcommand("bertrand", "Random chords shorter than the triangle side");
    bertrand->add_option("--model", model)->check(CLI::IsMember({"endpoints", "radial_midpoint", "area_midpoint"}))
        ->capture_default_str();
    bertrand->callback([&] {
      auto m = parse_chord_model(model);
      print_sim(g, bertrand_chord(m, reps(1000000), RngStream(g.seed, 2 + static_cast<int>(m)), g.lanes));
    });
    auto* peter = mc->add_subcommand("petersburg", "Median of batch means over --reps batches");
    peter->add_option("--games", games, "Games per batch")->capture_default_str();
    peter->callback([&] { print_sim(g, petersburg_median(games, reps(1000), RngStream(g.seed, 5), g.lanes)); });
    auto* quin = mc->add_subcommand("quincunx", "Galton board histogram");
    quin->add_option("--rows", rows)->capture_default_str();
    quin->callback([&] {
      auto res = quincunx(rows, reps(100000), RngStream(g.seed, 6), g.lanes);
      Output(g).add("rows", rows).add("histogram", res.histogram).add("tv_distance", res.tv_distance).print();
    });
    auto* enc = mc->add_subcommand("encounter", "Meeting within `wait` when arrivals are uniform on [0, window]");
    enc->add_option("--window", window)->capture_default_str();
    enc->add_option("--wait", wait)->capture_default_str();
    enc->callback([&] { print_sim(g, encounter_mc(window, wait, reps(1000000), RngStream(g.seed, 7), g.lanes)); });
    auto* freq = mc->add_subcommand("frequency", "Running frequency of a Bernoulli sequence");
    freq->add_option("--p", p)->capture_default_str();
    freq->callback([&] {
      const long n = reps(100000);
      std::vector<long> checkpoints;
      for (long c = 10; c < n; c *= 10) checkpoints.push_back(c);
      checkpoints.push_back(n);
      auto res = frequency_run(p, n, checkpoints, RngStream(g.seed, 8));
      ordered_json pts = ordered_json::array();
      for (auto [k, f] : res.points) pts.push_back({k, f});
      Output(g).add("points", pts).add("final_gap", res.final_gap).add("three_sigma", res.three_sigma).print();
    });
    auto* bervi = mc->add_subcommand("bervi", "Coverage of the median by the sample range");
    bervi->add_option("--n", bervi_n, "Sample size")->capture_default_str();
    bervi->callback([&] { print_sim(g, range_covers_median_mc(bervi_n, reps(1000000), RngStream(g.seed, 9), g.lanes)); });
  }

  // --- markov -----------------------------------------------------------
  auto* markov = app.add_subcommand("markov", "Markov chains");
  markov->require_subcommand(1);
  {
    static long n = 3, r = 10;
    static std::string file;
    auto* bl = markov->add_subcommand("bernoulli-laplace", "Stationary law and expected white balls");
    bl->add_option("--n", n)->capture_default_str();
    bl->add_option("--steps", r, "Exchanges for expected_white")->capture_default_str();
    bl->callback([&] {
      std::vector<std::string> pi;
      for (const auto& v : bernoulli_laplace_stationary(n)) pi.push_back(v.str());
      Output(g).add("stationary", pi).add("expected_white", expected_white(n, r)).print();
    });
    auto* st = markov->add_subcommand("stationary", "Stationary law of a CSV matrix (header from,<labels>)");
    st->add_option("--matrix", file)->required()->check(CLI::ExistingFile);
    st->callback([&] {
      std::ifstream in(file);
      std::string line, cell;
      std::getline(in, line);
      std::vector<std::string> labels;
      {
        std::stringstream ss(line);
        std::getline(ss, cell, ',');
        while (std::getline(ss, cell, ',')) labels.push_back(cell);
      }
      std::vector<std::vector<double>> rows;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::getline(ss, cell, ',');
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(q(cell).to_double());
        rows.push_back(row);
      }
      TransitionMatrix p(labels, rows);
      auto pi = stationary(p);
      Output out(g);
      for (std::size_t i = 0; i < labels.size(); ++i) out.add(labels[i], pi.probabilities()[i]);
      out.print();
    });
  }

  // --- fit --------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit a CSV system of error equations v = A x + w");
  {
    static std::string file, method = "lsq";
    static int k = 16;
    fit->add_option("--csv", file, "Header row, k coefficient columns, then w")->required()->check(CLI::ExistingFile);
    fit->add_option("--method", method)->check(CLI::IsMember({"lsq", "minimax", "pnorm"}))->capture_default_str();
    fit->add_option("--k", k, "Exponent for pnorm")->capture_default_str();
    fit->callback([&] {
      std::ifstream in(file);
      auto sys = LinearSystem::read_csv(in);
      FitResult res = method == "lsq" ? least_squares(sys) : method == "minimax" ? minimax_fit(sys) : pnorm_fit(sys, k);
      Output(g).add("estimates", res.estimates).add("residuals", res.residuals).add("m2", res.m2)
          .add("objective", res.objective).add("ill_conditioned", res.ill_conditioned).print();
    });
  }

  // --- reproduce-all ----------------------------------------------------
  auto* repro = app.add_subcommand("reproduce-all", "Run the reproduction suite");
  {
    static std::string kind, only;
    static bool no_timing = false, list = false;
    repro->add_option("--kind", kind, "exact | numeric | statistical");
    repro->add_option("--scenario", only, "Run a single scenario");
    repro->add_flag("--no-timing", no_timing, "Write elapsed_ms as 0 for byte-stable output");
    repro->add_flag("--list", list, "List scenario ids");
    repro->callback([&] {
      if (list) {
        for (const auto& s : scenario_registry())
          std::cout << s.id << "  " << to_string(s.kind) << "  " << s.section << "  " << s.tolerance << "\n";
        return;
      }
      SuiteResult res;
      if (!only.empty()) {
        res.reports.push_back(run_scenario(only, context(g)));
        auto& t = res.tally[res.reports.back().kind];
        t.total = 1;
        t.passed = res.reports.back().pass ? 1 : 0;
      } else {
        std::optional<ScenarioKind> k;
        if (!kind.empty()) k = parse_scenario_kind(kind);
        res = reproduce_all(context(g), k);
      }
      std::cout << (g.format == "json" ? to_json(res, !no_timing) : to_table(res));
      status = res.exit_code();
    });
  }

  // --- table ------------------------------------------------------------
  auto* table = app.add_subcommand("table", "Emit CSV tables");
  table->require_subcommand(1);
  {
    static double from = 0.0, to = 5.0, step = 0.01;
    static std::string out_path, fam = "uniform", chain = "bernoulli-laplace";
    static double a = 1.0, mean = 0.0, sigma = 1.0;
    static long n = 2;
    static bool self_convolve = false;
    auto* normal = table->add_subcommand("normal", "One-sided normal table");
    normal->add_option("--from", from)->capture_default_str();
    normal->add_option("--to", to)->capture_default_str();
    normal->add_option("--step", step)->capture_default_str();
    normal->add_option("-o,--output", out_path);
    normal->callback([&] {
      std::ofstream f;
      emit_normal_table(*open_out(out_path, f), from, to, step);
    });
    auto* grid = table->add_subcommand("grid-density", "Density sampled on its support");
    grid->add_option("--family", fam, "uniform | triangular | normal")->capture_default_str();
    grid->add_option("--a", a)->capture_default_str();
    grid->add_option("--mean", mean)->capture_default_str();
    grid->add_option("--sigma", sigma)->capture_default_str();
    grid->add_option("--step", step)->capture_default_str();
    grid->add_flag("--self-convolve", self_convolve, "Emit the density of the sum of two copies");
    grid->add_option("-o,--output", out_path);
    grid->callback([&] {
      auto d = make_distribution(fam, a, 1, "1/2", 1.0, mean, sigma, 1, 0);
      auto gd = GridDensity::sample(d, step);
      std::ofstream f;
      write_csv(*open_out(out_path, f), self_convolve ? convolve(gd, gd) : gd);
    });
    auto* matrix = table->add_subcommand("matrix", "Transition matrix of an urn chain");
    matrix->add_option("--chain", chain)->check(CLI::IsMember({"bernoulli-laplace"}))->capture_default_str();
    matrix->add_option("--n", n)->capture_default_str();
    matrix->add_option("-o,--output", out_path);
    matrix->callback([&] {
      std::ofstream f;
      write_csv(*open_out(out_path, f), bernoulli_laplace_chain(n));
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
