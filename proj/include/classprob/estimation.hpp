#pragma once

// Observation fitting. Observation equations are written
//   a_i x + b_i y + ... + w_i = 0,
// so the residual of an estimate is v_i = a_i x + b_i y + ... + w_i (not
// observed minus predicted).

#include <iosfwd>
#include <vector>

#include "classprob/distributions.hpp"
#include "classprob/rational.hpp"

namespace classprob {

/// n observation equations in k unknowns, n > k >= 1, coefficient columns of
/// full rank (relative pivot tolerance 1e-10).
class LinearSystem {
public:
  LinearSystem(std::vector<std::vector<double>> coefficients, std::vector<double> free_terms);

  /// CSV with a header row: k coefficient columns, then the w column.
  static LinearSystem read_csv(std::istream& is);

  std::size_t observations() const { return a_.size(); }
  std::size_t unknowns() const { return a_.front().size(); }
  const std::vector<std::vector<double>>& coefficients() const { return a_; }
  const std::vector<double>& free_terms() const { return w_; }
  /// Column j of the coefficient matrix.
  std::vector<double> column(std::size_t j) const;
  /// v = A x + w.
  std::vector<double> residuals(const std::vector<double>& x) const;

private:
  std::vector<std::vector<double>> a_;
  std::vector<double> w_;
};

struct FitResult {
  std::vector<double> estimates;
  std::vector<double> residuals;
  double m2;         // [vv] / (n - k)
  double objective;  // value of the minimized criterion
  /// Objective after each iteration, for iterative fits.
  std::vector<double> trace;
  /// Set when the normal matrix has condition number above 1e8.
  bool ill_conditioned = false;
};

/// Gauss's bracket [uv] = sum u_i v_i.
double gauss_bracket(const std::vector<double>& u, const std::vector<double>& v);

/// Minimizes [vv] through the normal equations [aa]x + [ab]y + ... + [aw] = 0,
/// solved by Cholesky factorization. Objective is [vv].
FitResult least_squares(const LinearSystem& sys);
/// Minimizes sum p_i v_i^2 for positive weights p_i.
FitResult weighted_least_squares(const LinearSystem& sys, const std::vector<double>& weights);

/// Minimizes max |v_i| by a dense simplex on
/// minimize t subject to -t <= a_i x + ... + w_i <= t. Objective is t.
FitResult minimax_fit(const LinearSystem& sys);

/// Minimizes sum v_i^(2k) by iteratively reweighted least squares: weights
/// |v_i|^(2k-2) averaged half-and-half with the previous weights give a
/// direction, followed by an exact line search along it. At most 200
/// iterations, 1e-10 tolerance on the estimates; NumericError otherwise.
FitResult pnorm_fit(const LinearSystem& sys, int k_exponent);

struct MeanError {
  double mean;
  double variance_of_mean;  // sum (x - mean)^2 / (n (n - 1))
  double mean_square_error; // its square root
};
MeanError mean_with_error(const Sample& s);

struct ConfidenceInterval {
  double low;
  double high;
  double z;             // normal quantile at (1 + coverage) / 2
  double one_m_prob;    // normal probability of the mean +- m band
};
/// Two-sided normal interval mean +- z m.
ConfidenceInterval confidence_interval(const Sample& s, double coverage);

/// P(x_min <= median <= x_max) = 1 - 1/2^(n-1).
Rational bervi_coverage(long n);

}  // namespace classprob
