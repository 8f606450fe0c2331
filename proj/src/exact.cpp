#include "classprob/exact.hpp"

#include <algorithm>

#include "classprob/errors.hpp"

namespace classprob {

Rational classical_probability(long favourable, long total) {
  if (total < 1) throw DomainError("classical probability needs at least one case");
  if (favourable < 0 || favourable > total)
    throw DomainError("favourable cases must lie in [0, total]");
  return Rational(favourable, total);
}

FiniteEventSpace::FiniteEventSpace(std::size_t size) : size_(size) {
  if (size == 0) throw DomainError("event space must have at least one case");
}

void FiniteEventSpace::add_event(const std::string& name, const std::vector<std::size_t>& cases) {
  if (events_.count(name)) throw DomainError("duplicate event name: " + name);
  std::vector<bool> mask(size_, false);
  for (std::size_t c : cases) {
    if (c >= size_) throw DomainError("case outside the event space in event " + name);
    mask[c] = true;
  }
  events_.emplace(name, std::move(mask));
}

void FiniteEventSpace::add_event(const std::string& name,
                                 const std::function<bool(std::size_t)>& predicate) {
  std::vector<std::size_t> cases;
  for (std::size_t i = 0; i < size_; ++i)
    if (predicate(i)) cases.push_back(i);
  add_event(name, cases);
}

const std::vector<bool>& FiniteEventSpace::event(const std::string& name) const {
  auto it = events_.find(name);
  if (it == events_.end()) throw LookupError("unknown event: " + name);
  return it->second;
}

std::size_t FiniteEventSpace::count(const std::string& name) const {
  const auto& mask = event(name);
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

Rational FiniteEventSpace::probability(const std::string& name) const {
  return Rational(static_cast<long>(count(name)), static_cast<long>(size_));
}

Rational union_probability(const FiniteEventSpace& space, const std::vector<std::string>& events) {
  if (events.empty()) throw DomainError("union of an empty family of events");
  if (events.size() > 24) throw DomainError("inclusion-exclusion limited to 24 events");
  std::vector<const std::vector<bool>*> masks;
  for (const auto& name : events) masks.push_back(&space.event(name));

  const std::size_t n = space.size();
  const unsigned long families = 1ul << masks.size();
  long signed_count = 0;
  for (unsigned long family = 1; family < families; ++family) {
    long members = 0;
    long intersection = 0;
    for (std::size_t c = 0; c < n; ++c) {
      bool in_all = true;
      for (std::size_t j = 0; j < masks.size() && in_all; ++j)
        if ((family >> j) & 1u) in_all = (*masks[j])[c];
      if (in_all) ++intersection;
    }
    for (unsigned long f = family; f; f &= f - 1) ++members;
    signed_count += (members % 2 == 1) ? intersection : -intersection;
  }
  return Rational(signed_count, static_cast<long>(n));
}

Rational conditional_probability(const FiniteEventSpace& space, const std::string& a,
                                 const std::string& given) {
  const auto& ma = space.event(a);
  const auto& mg = space.event(given);
  long both = 0;
  long base = 0;
  for (std::size_t c = 0; c < space.size(); ++c) {
    if (mg[c]) {
      ++base;
      if (ma[c]) ++both;
    }
  }
  if (base == 0) throw UndefinedError("conditioning on an event of probability zero: " + given);
  return Rational(both, base);
}

CauseSystem::CauseSystem(std::vector<Rational> priors, std::vector<Rational> likelihoods)
    : priors_(std::move(priors)), likelihoods_(std::move(likelihoods)) {
  if (priors_.empty()) throw DomainError("cause system needs at least one cause");
  if (priors_.size() != likelihoods_.size())
    throw ShapeError("priors and likelihoods differ in length");
  Rational sum;
  for (std::size_t i = 0; i < priors_.size(); ++i) {
    if (priors_[i] < 0 || priors_[i] > 1 || likelihoods_[i] < 0 || likelihoods_[i] > 1)
      throw DomainError("cause system entries must lie in [0, 1]");
    sum += priors_[i];
  }
  if (sum != 1) throw DomainError("priors must sum to exactly 1, got " + sum.str());
}

Rational total_probability(const CauseSystem& system) {
  Rational total;
  for (std::size_t i = 0; i < system.priors().size(); ++i)
    total += system.priors()[i] * system.likelihoods()[i];
  return total;
}

std::vector<Rational> bayes_posteriors(const CauseSystem& system) {
  Rational total = total_probability(system);
  if (total.sign() == 0) throw UndefinedError("observed event has total probability zero");
  std::vector<Rational> post;
  post.reserve(system.priors().size());
  for (std::size_t i = 0; i < system.priors().size(); ++i)
    post.push_back(system.priors()[i] * system.likelihoods()[i] / total);
  return post;
}

BigInt dice_sum_count(int dice, int faces, long target) {
  if (dice < 1) throw DomainError("need at least one die");
  if (faces < 2) throw DomainError("a die needs at least two faces");
  const long max_sum = static_cast<long>(dice) * faces;
  if (target < dice || target > max_sum) return 0;
  // counts[s] = ways to reach sum s with the dice rolled so far
  std::vector<BigInt> counts(static_cast<std::size_t>(max_sum) + 1, 0);
  counts[0] = 1;
  for (int d = 0; d < dice; ++d) {
    std::vector<BigInt> next(counts.size(), 0);
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (counts[s] == 0) continue;
      for (int f = 1; f <= faces && s + static_cast<std::size_t>(f) < next.size(); ++f)
        next[s + static_cast<std::size_t>(f)] += counts[s];
    }
    counts = std::move(next);
  }
  return counts[static_cast<std::size_t>(target)];
}

Rational points_division(int needed_a, int needed_b, const Rational& p) {
  if (needed_a < 1 || needed_b < 1) throw DomainError("each player must still need a round");
  if (p <= 0 || p >= 1) throw DomainError("round probability must lie in (0, 1)");
  const Rational q = Rational(1) - p;
  // share[a][b]: A's share when A needs a rounds and B needs b.
  std::vector<std::vector<Rational>> share(
      static_cast<std::size_t>(needed_a) + 1,
      std::vector<Rational>(static_cast<std::size_t>(needed_b) + 1));
  for (int b = 1; b <= needed_b; ++b) share[0][static_cast<std::size_t>(b)] = 1;
  for (int a = 1; a <= needed_a; ++a) {
    share[static_cast<std::size_t>(a)][0] = 0;
    for (int b = 1; b <= needed_b; ++b)
      share[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          p * share[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)] +
          q * share[static_cast<std::size_t>(a)][static_cast<std::size_t>(b - 1)];
  }
  return share[static_cast<std::size_t>(needed_a)][static_cast<std::size_t>(needed_b)];
}

RuinChances ruin_chances(int counters_a, int counters_b, const Rational& p_a, const Rational& p_b) {
  if (counters_a < 1 || counters_b < 1) throw DomainError("each gambler needs at least one counter");
  if (p_a <= 0 || p_a >= 1) throw DomainError("transfer probability must lie in (0, 1)");
  if (p_a + p_b != 1) throw DomainError("transfer probabilities must sum to 1");
  const long total = static_cast<long>(counters_a) + counters_b;
  Rational win_a;
  if (p_a == p_b) {
    win_a = Rational(counters_a, total);
  } else {
    const Rational ratio = p_b / p_a;
    win_a = (Rational(1) - pow(ratio, counters_a)) / (Rational(1) - pow(ratio, total));
  }
  return {win_a, Rational(1) - win_a};
}

Rational huygens_draw(long N, long M, long n, long m) {
  if (N < 0 || M < 0 || n < 0 || m < 0 || M > N || n > N || m > std::min(M, n))
    throw DomainError("incompatible counts for a draw without replacement");
  if (n - m > N - M) throw DomainError("more unmarked items drawn than exist");
  return Rational(binomial(M, m) * binomial(N - M, n - m), binomial(N, n));
}

std::pair<Rational, Rational> de_mere() {
  return {Rational(1) - pow(Rational(5, 6), 4), Rational(1) - pow(Rational(35, 36), 24)};
}

Rational poisson_urn(long n) {
  if (n < 1) throw DomainError("urn must hold at least one ball");
  Rational sum;
  for (long k = 0; k <= n; ++k) sum += Rational(k, n);
  return sum / Rational(n + 1);
}

}  // namespace classprob
