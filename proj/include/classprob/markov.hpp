#pragma once

// Finite homogeneous Markov chains and the urn interchange models.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "classprob/rational.hpp"

namespace classprob {

/// Row-stochastic matrix with state labels; entries in [0, 1] and rows
/// summing to 1 within 1e-12.
class TransitionMatrix {
public:
  TransitionMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> rows);
  /// Labels "0", "1", ...
  explicit TransitionMatrix(std::vector<std::vector<double>> rows);

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  static TransitionMatrix identity(std::vector<std::string> labels);

private:
  struct Unchecked {};
  TransitionMatrix(Unchecked, std::vector<std::string> labels, std::vector<std::vector<double>> rows)
      : labels_(std::move(labels)), rows_(std::move(rows)) {}
  friend TransitionMatrix multiply(const TransitionMatrix&, const TransitionMatrix&);

  std::vector<std::string> labels_;
  std::vector<std::vector<double>> rows_;
};

/// Row-stochastic matrix of exact rationals; rows sum to exactly 1.
class RationalTransitionMatrix {
public:
  RationalTransitionMatrix(std::vector<std::string> labels, std::vector<std::vector<Rational>> rows);

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  TransitionMatrix to_double() const;

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> rows_;
};

/// Probabilities over states: non-negative, summing to 1 within 1e-12.
class StateDistribution {
public:
  explicit StateDistribution(std::vector<double> probabilities);
  static StateDistribution point_mass(std::size_t size, std::size_t state);
  static StateDistribution uniform(std::size_t size);

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& probabilities() const { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }

private:
  std::vector<double> p_;
};

TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b);
RationalTransitionMatrix multiply(const RationalTransitionMatrix& a, const RationalTransitionMatrix& b);

/// d P.
StateDistribution step(const StateDistribution& d, const TransitionMatrix& p);
std::vector<Rational> step(const std::vector<Rational>& d, const RationalTransitionMatrix& p);

/// P^n by repeated squaring; n = 0 gives the identity.
TransitionMatrix n_step(const TransitionMatrix& p, long n);
RationalTransitionMatrix n_step(const RationalTransitionMatrix& p, long n);

/// Smallest s <= max_power with every entry of P^s positive, if any. Only
/// the zero pattern is propagated, so the answer is exact.
std::optional<long> is_ergodic(const TransitionMatrix& p, long max_power);

/// Solves pi P = pi with one balance equation replaced by sum(pi) = 1, then
/// checks the result against a row of P^(2^j). Throws UndefinedError unless
/// some P^s with s <= k^2 is strictly positive.
StateDistribution stationary(const TransitionMatrix& p);
/// The same linear solve in exact arithmetic.
std::vector<Rational> stationary(const RationalTransitionMatrix& p);

/// States w = 0..n white balls in urn 1 of two urns holding n balls each; one
/// ball drawn from each urn and the two swapped.
RationalTransitionMatrix bernoulli_laplace_chain(long n);
/// C(n, w)^2 / C(2n, n).
std::vector<Rational> bernoulli_laplace_stationary(long n);

/// n/2 + (n/2)(1 - 2/n)^r, starting from w = n.
double expected_white(long n, long r);
Rational expected_white_exact(long n, long r);

using UrnMatrix = std::array<std::array<double, 3>, 3>;  // [urn][colour]
/// Expected colour counts after r cycles (urn 1 -> 2, 2 -> 3, 3 -> 1, one
/// uniformly drawn ball each move), starting from n I.
UrnMatrix three_urn_expected(long n, long r);

/// Header "from,<labels...>", then one row per state, 12 decimals.
void write_csv(std::ostream& os, const TransitionMatrix& p);
/// Same layout with entries written as exact fractions.
void write_csv(std::ostream& os, const RationalTransitionMatrix& p);

}  // namespace classprob
