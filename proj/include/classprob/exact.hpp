#pragma once

// Exact combinatorial probability on finite equiprobable spaces.
//
// Everything here works in Rational; no floating point is involved.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "classprob/rational.hpp"

namespace classprob {

/// Ratio of favourable to equally possible cases.
Rational classical_probability(long favourable, long total);

/// N equally possible elementary cases {0..N-1} with named events.
class FiniteEventSpace {
public:
  explicit FiniteEventSpace(std::size_t size);

  /// Registers an event from an explicit list of cases. Duplicate cases are
  /// collapsed; a case outside {0..N-1} or a reused name is rejected.
  void add_event(const std::string& name, const std::vector<std::size_t>& cases);
  void add_event(const std::string& name, const std::function<bool(std::size_t)>& predicate);

  std::size_t size() const { return size_; }
  bool has_event(const std::string& name) const { return events_.count(name) != 0; }
  /// Membership mask of a named event; throws LookupError if unknown.
  const std::vector<bool>& event(const std::string& name) const;
  std::size_t count(const std::string& name) const;
  Rational probability(const std::string& name) const;

private:
  std::size_t size_;
  std::map<std::string, std::vector<bool>> events_;
};

/// Probability of the union of the named events by inclusion-exclusion over
/// every non-empty sub-family of intersections.
Rational union_probability(const FiniteEventSpace& space, const std::vector<std::string>& events);

/// P(a | given) = |a ∩ given| / |given|.
Rational conditional_probability(const FiniteEventSpace& space, const std::string& a,
                                 const std::string& given);

/// Mutually exclusive causes B_i with priors P(B_i) and likelihoods P(A|B_i).
class CauseSystem {
public:
  CauseSystem(std::vector<Rational> priors, std::vector<Rational> likelihoods);

  const std::vector<Rational>& priors() const { return priors_; }
  const std::vector<Rational>& likelihoods() const { return likelihoods_; }

private:
  std::vector<Rational> priors_;
  std::vector<Rational> likelihoods_;
};

Rational total_probability(const CauseSystem& system);
/// Posterior probabilities P(B_i|A); they sum to exactly 1.
std::vector<Rational> bayes_posteriors(const CauseSystem& system);

/// Ordered outcomes of `dice` dice with `faces` faces whose points sum to
/// `target`.
BigInt dice_sum_count(int dice, int faces, long target);

/// Fair share of the stakes for player A who still needs `needed_a` rounds
/// while B needs `needed_b`; A wins each round with probability p.
Rational points_division(int needed_a, int needed_b, const Rational& p);

struct RuinChances {
  Rational a;  // A collects all counters
  Rational b;  // B collects all counters
};

/// Gambler's ruin with A holding `counters_a` and B `counters_b`; each
/// transfer goes to A with probability p_a and to B with p_b. Rounds with no
/// transfer are excluded, so p_a + p_b must equal 1.
RuinChances ruin_chances(int counters_a, int counters_b, const Rational& p_a, const Rational& p_b);

/// Probability of exactly m marked items when n are drawn without
/// replacement from N items of which M are marked.
Rational huygens_draw(long N, long M, long n, long m);

/// (1 - (5/6)^4, 1 - (35/36)^24): at least one six in four throws of one
/// die versus at least one double six in 24 throws of two dice.
std::pair<Rational, Rational> de_mere();

/// Mean of k/n over k = 0..n with equal weights 1/(n+1); always 1/2.
Rational poisson_urn(long n);

}  // namespace classprob
