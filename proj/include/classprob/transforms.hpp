#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "classprob/distributions.hpp"
#include "classprob/rational.hpp"

namespace classprob {

/// Density sampled on ascending abscissae.
class GridDensity {
public:
  /// Checks ordering and non-negativity only; see normalized() for mass.
  GridDensity(std::vector<double> abscissae, std::vector<double> ordinates);

  /// As above, and additionally requires |trapezoid mass - 1| <= tol.
  static GridDensity normalized(std::vector<double> abscissae, std::vector<double> ordinates,
                                double tol = 1e-6);

  /// Samples d on lo, lo + step, ... up to hi (inclusive within rounding).
  static GridDensity sample(const Distribution& d, double lo, double hi, double step);
  /// Samples over the support; the normal is truncated at mean +- 8 sigma
  /// (lost mass about 1.2e-15). Other infinite supports are rejected.
  static GridDensity sample(const Distribution& d, double step);

  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& ordinates() const { return y_; }
  std::size_t size() const { return x_.size(); }

  double mass() const;  // trapezoid rule
  double mean() const;  // trapezoid rule on x * density
  /// Piecewise-linear interpolation; zero outside the grid.
  double at(double x) const;
  /// Common step if the grid is uniform to 1e-9 relative, else 0.
  double uniform_step() const;

private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// "x,density" header followed by one row per node, 12 decimals.
void write_csv(std::ostream& os, const GridDensity& g);

/// One strictly monotone branch of y = f(x) on [lower, upper] (either end may
/// be infinite), with inverse x = psi(y) and its derivative psi'(y).
struct MonotonePiece {
  double lower;
  double upper;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> inverse_derivative;
};

/// A piecewise strictly monotone map. Construction samples every piece and
/// rejects pieces where psi' changes sign or psi(f(x)) strays from x by more
/// than 1e-9 (relative).
class MonotoneMap {
public:
  explicit MonotoneMap(std::vector<MonotonePiece> pieces);
  const std::vector<MonotonePiece>& pieces() const { return pieces_; }

  static MonotoneMap identity();
  /// y = offset + scale * x, scale != 0.
  static MonotoneMap affine(double offset, double scale);
  /// y = 1 - x^3 on the whole line.
  static MonotoneMap one_minus_cube();
  /// y = exp(x).
  static MonotoneMap exponential();
  /// y = x^2 as two pieces, (-inf, 0] and [0, inf).
  static MonotoneMap square();

private:
  std::vector<MonotonePiece> pieces_;
};

/// Density of eta = f(xi) on the grid: sum over pieces of
/// phi(psi(y)) |psi'(y)| where psi(y) falls inside the piece.
GridDensity push_density(const std::function<double(double)>& source_density, const MonotoneMap& map,
                         const std::vector<double>& grid);
GridDensity push_density(const Distribution& source, const MonotoneMap& map,
                         const std::vector<double>& grid);

/// Density of the sum of two independent variables by the trapezoid rule
/// on the overlap of the two grids; both must be uniform with the same step.
GridDensity convolve(const GridDensity& f, const GridDensity& g);

/// Sample correlation coefficient.
double correlation(const std::vector<std::pair<double, double>>& pairs);

struct BivariateNormal {
  double mean_x;
  double mean_y;
  double sigma_x;
  double sigma_y;
  double r;
};

double bivariate_normal_pdf(const BivariateNormal& params, double x, double y);

/// Two people arrive uniformly within a window of T and the first waits w:
/// the meeting probability 1 - ((T - w)/T)^2.
Rational encounter_probability(const Rational& window, const Rational& wait);

}  // namespace classprob
