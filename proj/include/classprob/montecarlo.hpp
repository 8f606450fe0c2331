#pragma once

// Seeded simulations. Replications run in fixed-size blocks, each block on
// its own child stream of the caller's RngStream; block results are reduced
// in block order, so a report depends only on the seed and the parameters,
// never on the number of lanes.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classprob/rng.hpp"

namespace classprob {

struct SimReport {
  std::string name;
  std::uint64_t seed = 0;
  long replications = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::optional<double> target;
  std::optional<double> z;
  /// Named by-products such as pi_hat or max_tosses.
  std::map<std::string, double> extras;

  bool operator==(const SimReport&) const = default;
};

/// {"name","seed","n","estimate","se","target","z"} plus any extras; a
/// missing target or z is null.
std::string to_json(const SimReport& r);
SimReport sim_report_from_json(const std::string& text);

/// Replications per block.
inline constexpr long kBlockSize = 1L << 15;

/// Lanes used when a simulation is called with lanes = 0.
unsigned default_lanes();

/// Needle of length 2r on lines spaced a apart, a > 2r. Estimate is the hit
/// frequency with target 4r/(pi a); extras["pi_hat"] = 4r/(a * estimate).
SimReport buffon_needle(double r, double a, long n, const RngStream& rng, unsigned lanes = 0);

/// Mean gain over `games` doubling games (payoff 2^(k-1) when the first
/// head shows at toss k, at most 64 tosses). Extras: max_tosses, capped.
SimReport petersburg(long games, const RngStream& rng, unsigned lanes = 0);

/// Median of `batches` independent batch means of `games` games each.
SimReport petersburg_median(long games, long batches, const RngStream& rng, unsigned lanes = 0);

/// log2(1/p0).
double neglect_threshold(double p0);

enum class ChordModel { endpoints, radial_midpoint, area_midpoint };
/// "endpoints", "radial_midpoint" or "area_midpoint"; ParameterError otherwise.
ChordModel parse_chord_model(const std::string& tag);
std::string to_string(ChordModel m);

/// Frequency of chords shorter than the inscribed triangle's side.
SimReport bertrand_chord(ChordModel model, long n, const RngStream& rng, unsigned lanes = 0);

struct QuincunxResult {
  std::vector<long> histogram;  // shots landing in bin 0..rows
  double tv_distance;           // to Binomial(rows, 1/2)
};
QuincunxResult quincunx(int rows, long shots, const RngStream& rng, unsigned lanes = 0);

struct FrequencyRun {
  std::vector<std::pair<long, double>> points;  // (trials so far, frequency)
  double final_gap;                              // |final frequency - p|
  double three_sigma;                            // 3 sqrt(p(1-p)/n)
};
FrequencyRun frequency_run(double p, long n, const std::vector<long>& checkpoints, const RngStream& rng);

/// Arrival times uniform on [0, T]; a meeting when they differ by <= w.
SimReport encounter_mc(double window, double wait, long n, const RngStream& rng, unsigned lanes = 0);

/// Coverage of the median 0 by [min, max] of n draws uniform on (-1, 1);
/// target 1 - 1/2^(n-1).
SimReport range_covers_median_mc(int n, long reps, const RngStream& rng, unsigned lanes = 0);

struct UrnCycleEstimate {
  std::array<std::array<double, 3>, 3> mean;  // [urn][colour]
  std::array<std::array<double, 3>, 3> standard_error;
};
/// Urn i starts with n balls of colour i. One cycle moves a uniformly drawn
/// ball urn 1 -> 2, then 2 -> 3, then 3 -> 1; `reps` cycles from the start.
UrnCycleEstimate three_urn_cycle_mc(int n, long reps, const RngStream& rng, unsigned lanes = 0);

}  // namespace classprob
