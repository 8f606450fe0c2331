#include "classprob/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "classprob/distributions.hpp"
#include "classprob/errors.hpp"
#include "json.hpp"

namespace classprob {

namespace {

// Runs fn(stream, count) for consecutive blocks of at most kBlockSize
// replications. Block b always uses rng.child(b).
template <class Acc, class Fn>
std::vector<Acc> run_blocks(const RngStream& rng, long n, unsigned lanes, Fn fn) {
  const long blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Acc> out(static_cast<std::size_t>(blocks));
  if (lanes == 0) lanes = default_lanes();
  lanes = static_cast<unsigned>(std::min<long>(lanes, std::max(1L, blocks)));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b; (b = next.fetch_add(1)) < blocks;) {
      RngStream s = rng.child(static_cast<std::uint64_t>(b));
      const long count = std::min(kBlockSize, n - b * kBlockSize);
      out[static_cast<std::size_t>(b)] = fn(s, count);
    }
  };
  if (lanes <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < lanes; ++i) pool.emplace_back(worker);
  }
  return out;
}

struct Moments2 {
  double sum = 0.0;
  double sumsq = 0.0;
};

SimReport proportion_report(std::string name, const RngStream& rng, long n, long hits,
                            std::optional<double> target) {
  SimReport r;
  r.name = std::move(name);
  r.seed = rng.master_seed();
  r.replications = n;
  r.estimate = static_cast<double>(hits) / static_cast<double>(n);
  r.standard_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(n));
  r.target = target;
  if (target && r.standard_error > 0) r.z = (r.estimate - *target) / r.standard_error;
  return r;
}

long count_hits(const RngStream& rng, long n, unsigned lanes, const std::function<bool(RngStream&)>& trial) {
  auto parts = run_blocks<long>(rng, n, lanes, [&](RngStream& s, long count) {
    long h = 0;
    for (long i = 0; i < count; ++i) h += trial(s) ? 1 : 0;
    return h;
  });
  long hits = 0;
  for (long h : parts) hits += h;
  return hits;
}

void check_count(long n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + " must be at least 1");
}

}  // namespace

unsigned default_lanes() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string to_json(const SimReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["seed"] = r.seed;
  j["n"] = r.replications;
  j["estimate"] = r.estimate;
  j["se"] = r.standard_error;
  j["target"] = r.target ? nlohmann::ordered_json(*r.target) : nlohmann::ordered_json(nullptr);
  j["z"] = r.z ? nlohmann::ordered_json(*r.z) : nlohmann::ordered_json(nullptr);
  if (!r.extras.empty()) j["extras"] = r.extras;
  return j.dump();
}

SimReport sim_report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SimReport r;
  r.name = j.at("name").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.replications = j.at("n").get<long>();
  r.estimate = j.at("estimate").get<double>();
  r.standard_error = j.at("se").get<double>();
  if (!j.at("target").is_null()) r.target = j.at("target").get<double>();
  if (!j.at("z").is_null()) r.z = j.at("z").get<double>();
  if (j.contains("extras")) r.extras = j.at("extras").get<std::map<std::string, double>>();
  return r;
}

SimReport buffon_needle(double r, double a, long n, const RngStream& rng, unsigned lanes) {
  if (!(r > 0)) throw DomainError("needle half-length must be positive");
  if (!(a > 2.0 * r)) throw DomainError("line spacing must exceed the needle length");
  check_count(n, "throws");
  // Distance of the centre to the nearest line and the acute angle.
  const long hits = count_hits(rng, n, lanes, [&](RngStream& s) {
    const double distance = 0.5 * a * s.uniform();
    const double angle = 0.5 * std::numbers::pi * s.uniform();
    return distance <= r * std::sin(angle);
  });
  auto rep = proportion_report("buffon-needle", rng, n, hits, 4.0 * r / (std::numbers::pi * a));
  rep.extras["pi_hat"] = hits > 0 ? 4.0 * r / (a * rep.estimate) : INFINITY;
  return rep;
}

namespace {

struct PetersburgAcc {
  double gain = 0.0;
  double gain_sq = 0.0;
  int max_tosses = 0;
  long capped = 0;
};

PetersburgAcc play_games(RngStream& s, long count) {
  PetersburgAcc acc;
  for (long i = 0; i < count; ++i) {
    const std::uint64_t w = s.next();
    // Bit t is toss t + 1, a set bit being heads.
    const int tosses = w == 0 ? 64 : std::countr_zero(w) + 1;
    if (w == 0) ++acc.capped;
    const double payoff = std::ldexp(1.0, tosses - 1);
    acc.gain += payoff;
    acc.gain_sq += payoff * payoff;
    acc.max_tosses = std::max(acc.max_tosses, tosses);
  }
  return acc;
}

}  // namespace

SimReport petersburg(long games, const RngStream& rng, unsigned lanes) {
  check_count(games, "games");
  auto parts = run_blocks<PetersburgAcc>(rng, games, lanes, play_games);
  PetersburgAcc total;
  for (const auto& p : parts) {
    total.gain += p.gain;
    total.gain_sq += p.gain_sq;
    total.max_tosses = std::max(total.max_tosses, p.max_tosses);
    total.capped += p.capped;
  }
  const double n = static_cast<double>(games);
  SimReport r;
  r.name = "petersburg";
  r.seed = rng.master_seed();
  r.replications = games;
  r.estimate = total.gain / n;
  const double var = games > 1 ? std::max(0.0, (total.gain_sq - n * r.estimate * r.estimate) / (n - 1)) : 0.0;
  r.standard_error = std::sqrt(var / n);
  r.extras["max_tosses"] = total.max_tosses;
  r.extras["capped"] = static_cast<double>(total.capped);
  return r;
}

SimReport petersburg_median(long games, long batches, const RngStream& rng, unsigned lanes) {
  check_count(games, "games");
  check_count(batches, "batches");
  // One block per batch: each batch plays its games on its own child stream.
  std::vector<double> means(static_cast<std::size_t>(batches));
  if (lanes == 0) lanes = default_lanes();
  lanes = static_cast<unsigned>(std::min<long>(lanes, batches));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b; (b = next.fetch_add(1)) < batches;) {
      RngStream s = rng.child(static_cast<std::uint64_t>(b));
      means[static_cast<std::size_t>(b)] = play_games(s, games).gain / static_cast<double>(games);
    }
  };
  if (lanes <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < lanes; ++i) pool.emplace_back(worker);
  }
  std::sort(means.begin(), means.end());
  auto at = [&](double q) { return means[static_cast<std::size_t>(q * static_cast<double>(batches - 1))]; };
  const std::size_t mid = means.size() / 2;
  SimReport r;
  r.name = "petersburg-median";
  r.seed = rng.master_seed();
  r.replications = batches;
  r.estimate = means.size() % 2 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
  r.extras["games_per_batch"] = static_cast<double>(games);
  r.extras["q25"] = at(0.25);
  r.extras["q75"] = at(0.75);
  return r;
}

double neglect_threshold(double p0) {
  if (!(p0 > 0 && p0 < 1)) throw DomainError("p0 must lie in (0, 1)");
  return -std::log2(p0);
}

ChordModel parse_chord_model(const std::string& tag) {
  if (tag == "endpoints") return ChordModel::endpoints;
  if (tag == "radial_midpoint") return ChordModel::radial_midpoint;
  if (tag == "area_midpoint") return ChordModel::area_midpoint;
  throw ParameterError("unknown chord model: " + tag);
}

std::string to_string(ChordModel m) {
  switch (m) {
    case ChordModel::endpoints:
      return "endpoints";
    case ChordModel::radial_midpoint:
      return "radial_midpoint";
    case ChordModel::area_midpoint:
      return "area_midpoint";
  }
  return "";
}

SimReport bertrand_chord(ChordModel model, long n, const RngStream& rng, unsigned lanes) {
  check_count(n, "throws");
  // Unit circle; the inscribed triangle's side is sqrt(3).
  const double side = std::sqrt(3.0);
  std::function<bool(RngStream&)> trial;
  double target = 0.0;
  switch (model) {
    case ChordModel::endpoints:
      target = 2.0 / 3.0;
      trial = [side](RngStream& s) {
        const double gap = 2.0 * std::numbers::pi * std::fabs(s.uniform() - s.uniform());
        return 2.0 * std::sin(0.5 * gap) < side;
      };
      break;
    case ChordModel::radial_midpoint:
      target = 0.5;
      trial = [side](RngStream& s) {
        const double d = s.uniform();
        return 2.0 * std::sqrt(1.0 - d * d) < side;
      };
      break;
    case ChordModel::area_midpoint:
      target = 0.75;
      trial = [side](RngStream& s) {
        const double d2 = s.uniform();  // squared distance of a uniform point
        return 2.0 * std::sqrt(1.0 - d2) < side;
      };
      break;
  }
  return proportion_report("bertrand-" + to_string(model), rng, n, count_hits(rng, n, lanes, trial), target);
}

QuincunxResult quincunx(int rows, long shots, const RngStream& rng, unsigned lanes) {
  if (rows < 1) throw DomainError("rows must be at least 1");
  check_count(shots, "shots");
  const auto bins = static_cast<std::size_t>(rows) + 1;
  auto parts = run_blocks<std::vector<long>>(rng, shots, lanes, [&](RngStream& s, long count) {
    std::vector<long> h(bins, 0);
    for (long i = 0; i < count; ++i) {
      int right = 0;
      for (int left = rows; left > 0; left -= 64) {
        std::uint64_t w = s.next();
        if (left < 64) w &= (std::uint64_t{1} << left) - 1;
        right += std::popcount(w);
      }
      ++h[static_cast<std::size_t>(right)];
    }
    return h;
  });
  QuincunxResult out{std::vector<long>(bins, 0), 0.0};
  for (const auto& h : parts)
    for (std::size_t k = 0; k < bins; ++k) out.histogram[k] += h[k];
  double tv = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double expected = binomial_pmf_exact(rows, Rational(1, 2), static_cast<long>(k)).to_double();
    tv += std::fabs(static_cast<double>(out.histogram[k]) / static_cast<double>(shots) - expected);
  }
  out.tv_distance = 0.5 * tv;
  return out;
}

FrequencyRun frequency_run(double p, long n, const std::vector<long>& checkpoints, const RngStream& rng) {
  if (!(p >= 0 && p <= 1)) throw DomainError("p must lie in [0, 1]");
  check_count(n, "trials");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > n) throw DomainError("checkpoints must lie in [1, n]");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) throw DomainError("checkpoints must be ascending");
  }
  RngStream s = rng;
  FrequencyRun out;
  long hits = 0;
  std::size_t next_cp = 0;
  for (long t = 1; t <= n; ++t) {
    if (s.uniform() < p) ++hits;
    if (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
      out.points.emplace_back(t, static_cast<double>(hits) / static_cast<double>(t));
      ++next_cp;
    }
  }
  const double freq = static_cast<double>(hits) / static_cast<double>(n);
  out.final_gap = std::fabs(freq - p);
  out.three_sigma = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return out;
}

SimReport encounter_mc(double window, double wait, long n, const RngStream& rng, unsigned lanes) {
  if (!(window > 0) || !(wait > 0)) throw DomainError("window and wait must be positive");
  if (wait > window) throw DomainError("wait cannot exceed the window");
  check_count(n, "points");
  const long hits = count_hits(rng, n, lanes, [&](RngStream& s) {
    const double x = window * s.uniform(), y = window * s.uniform();
    return std::fabs(x - y) <= wait;
  });
  const double free = (window - wait) / window;
  return proportion_report("encounter", rng, n, hits, 1.0 - free * free);
}

SimReport range_covers_median_mc(int n, long reps, const RngStream& rng, unsigned lanes) {
  if (n < 2) throw DomainError("need at least two observations");
  check_count(reps, "replications");
  // Draws uniform on (-1, 1), median 0.
  const long hits = count_hits(rng, reps, lanes, [n](RngStream& s) {
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < n; ++i) {
      const double x = 2.0 * s.uniform_open() - 1.0;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    return lo <= 0.0 && 0.0 <= hi;
  });
  return proportion_report("range-covers-median", rng, reps, hits, 1.0 - std::ldexp(1.0, 1 - n));
}

UrnCycleEstimate three_urn_cycle_mc(int n, long reps, const RngStream& rng, unsigned lanes) {
  if (n < 1) throw DomainError("need at least one ball per urn");
  check_count(reps, "replications");
  using Grid = std::array<std::array<double, 3>, 3>;
  struct Acc {
    Grid sum{};
    Grid sumsq{};
  };
  auto parts = run_blocks<Acc>(rng, reps, lanes, [n](RngStream& s, long count) {
    Acc acc;
    for (long i = 0; i < count; ++i) {
      std::array<std::array<long, 3>, 3> c{};
      for (int u = 0; u < 3; ++u) c[u][u] = n;
      for (int from = 0; from < 3; ++from) {
        const int to = (from + 1) % 3;
        const long size = c[from][0] + c[from][1] + c[from][2];
        long pick = static_cast<long>(s.below(static_cast<std::uint64_t>(size)));
        int colour = 0;
        while (pick >= c[from][colour]) pick -= c[from][colour++];
        --c[from][colour];
        ++c[to][colour];
      }
      for (int u = 0; u < 3; ++u)
        for (int k = 0; k < 3; ++k) {
          const auto v = static_cast<double>(c[u][k]);
          acc.sum[u][k] += v;
          acc.sumsq[u][k] += v * v;
        }
    }
    return acc;
  });
  Acc total;
  for (const auto& p : parts)
    for (int u = 0; u < 3; ++u)
      for (int k = 0; k < 3; ++k) {
        total.sum[u][k] += p.sum[u][k];
        total.sumsq[u][k] += p.sumsq[u][k];
      }
  UrnCycleEstimate out{};
  const double m = static_cast<double>(reps);
  for (int u = 0; u < 3; ++u)
    for (int k = 0; k < 3; ++k) {
      const double mean = total.sum[u][k] / m;
      const double var = reps > 1 ? std::max(0.0, (total.sumsq[u][k] - m * mean * mean) / (m - 1)) : 0.0;
      out.mean[u][k] = mean;
      out.standard_error[u][k] = std::sqrt(var / m);
    }
  return out;
}

}  // namespace classprob
