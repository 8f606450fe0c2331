#pragma once

// Compiled-in reproduction suite: each scenario runs one computation from
// the library and compares it with a known value.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace classprob {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

enum class ScenarioKind { exact, numeric, statistical };
std::string to_string(ScenarioKind k);
/// "exact", "numeric" or "statistical"; ParameterError otherwise.
ScenarioKind parse_scenario_kind(const std::string& tag);

struct RunContext {
  std::uint64_t seed = kDefaultSeed;
  /// Overrides the replication count of statistical scenarios.
  std::optional<long> reps;
  unsigned lanes = 0;
};

struct Outcome {
  std::string computed;
  std::string expected;
  bool pass = false;
};

struct Scenario {
  std::string id;
  std::string section;    // topic locator, e.g. "classical/bayes"
  ScenarioKind kind;
  std::string tolerance;  // "exact", "abs 1e-4", "|z| < 4", ...
  std::function<Outcome(const RunContext&)> run;
};

struct Report {
  std::string scenario;
  std::string section;
  std::string computed;
  std::string expected;
  bool pass = false;
  ScenarioKind kind = ScenarioKind::exact;
  double elapsed_ms = 0.0;

  bool operator==(const Report&) const = default;
};

/// All scenarios, sorted by id.
const std::vector<Scenario>& scenario_registry();

/// Throws LookupError for an unknown id. A failed comparison is reported,
/// not thrown; an exception inside the computation is reported as a fail
/// with the message as the computed value.
Report run_scenario(const std::string& id, const RunContext& ctx = {});

struct KindTally {
  int passed = 0;
  int total = 0;
};

struct SuiteResult {
  std::vector<Report> reports;  // ordered by scenario id
  std::map<ScenarioKind, KindTally> tally;

  bool all_pass() const;
  int exit_code() const { return all_pass() ? 0 : 1; }
};

/// Runs every registered scenario, optionally only those of one kind.
SuiteResult reproduce_all(const RunContext& ctx = {}, std::optional<ScenarioKind> only = {});

/// {"scenario","section","computed","expected","pass","kind","elapsed_ms"}
std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

/// {"reports":[...],"summary":{kind:{"passed","total"}},"pass":bool}.
/// With timing off every elapsed_ms is written as 0 so that runs with the
/// same seed are byte-identical.
std::string to_json(const SuiteResult& s, bool timing = true);

/// Fixed-width text table of the reports plus a summary line per kind.
std::string to_table(const SuiteResult& s);

/// CSV "z,value" of the one-sided normal table for z = from, from + step,
/// ... up to `to`; z with 2 decimals, value with 10. An empty range writes
/// the header only. Throws ParameterError unless step > 0.
void emit_normal_table(std::ostream& os, double from, double to, double step);

}  // namespace classprob
