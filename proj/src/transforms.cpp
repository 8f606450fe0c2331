#include "classprob/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "classprob/errors.hpp"

namespace classprob {

GridDensity::GridDensity(std::vector<double> abscissae, std::vector<double> ordinates)
    : x_(std::move(abscissae)), y_(std::move(ordinates)) {
  if (x_.size() < 2 || x_.size() != y_.size())
    throw ShapeError("grid density needs at least two nodes and matching ordinates");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw ShapeError("grid abscissae must be strictly ascending");
  for (double v : y_)
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("grid ordinates must be finite and non-negative");
}

GridDensity GridDensity::normalized(std::vector<double> abscissae, std::vector<double> ordinates,
                                    double tol) {
  GridDensity g(std::move(abscissae), std::move(ordinates));
  if (std::fabs(g.mass() - 1.0) > tol) throw DomainError("grid density mass differs from 1");
  return g;
}

GridDensity GridDensity::sample(const Distribution& d, double lo, double hi, double step) {
  if (!(step > 0) || !(hi > lo)) throw ShapeError("grid needs lo < hi and a positive step");
  const double steps = (hi - lo) / step;
  const double whole = std::round(steps);
  const bool exact_fit = std::fabs(steps - whole) < 1e-9 * std::max(1.0, steps);
  const auto count = static_cast<std::size_t>(exact_fit ? whole : std::floor(steps)) + 1;
  std::vector<double> x(count), y(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = exact_fit ? lo + (hi - lo) * static_cast<double>(i) / whole : lo + static_cast<double>(i) * step;
    y[i] = mass_or_density(d, x[i]);
  }
  return GridDensity(std::move(x), std::move(y));
}

GridDensity GridDensity::sample(const Distribution& d, double step) {
  if (d.is_discrete()) throw DomainError("grid densities need a continuous family");
  auto [lo, hi] = d.support();
  if (std::isinf(lo) || std::isinf(hi)) {
    const auto* n = std::get_if<family::Normal>(&d.family());
    if (n == nullptr) throw DomainError("no finite truncation for this family");
    lo = n->mean - 8.0 * n->sigma;
    hi = n->mean + 8.0 * n->sigma;
  }
  return sample(d, lo, hi, step);
}

double GridDensity::mass() const {
  double s = 0.0;
  for (std::size_t i = 1; i < x_.size(); ++i) s += 0.5 * (y_[i] + y_[i - 1]) * (x_[i] - x_[i - 1]);
  return s;
}

double GridDensity::mean() const {
  double s = 0.0;
  for (std::size_t i = 1; i < x_.size(); ++i)
    s += 0.5 * (x_[i] * y_[i] + x_[i - 1] * y_[i - 1]) * (x_[i] - x_[i - 1]);
  return s / mass();
}

double GridDensity::at(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.end()) return y_.back();
  const auto i = static_cast<std::size_t>(it - x_.begin());
  const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return y_[i - 1] + t * (y_[i] - y_[i - 1]);
}

double GridDensity::uniform_step() const {
  const double h = (x_.back() - x_.front()) / static_cast<double>(x_.size() - 1);
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (std::fabs((x_[i] - x_[i - 1]) - h) > 1e-9 * std::max(1.0, std::fabs(h))) return 0.0;
  return h;
}

void write_csv(std::ostream& os, const GridDensity& g) {
  os << "x,density\n";
  char buf[96];
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12f,%.12f\n", g.abscissae()[i], g.ordinates()[i]);
    os << buf;
  }
}

// --- monotone maps --------------------------------------------------------

namespace {

// Sample points spread over [lo, hi], mapping infinite ends through atan.
std::vector<double> probe_points(double lo, double hi) {
  std::vector<double> pts;
  const int m = 33;
  const double a = std::isinf(lo) ? -0.5 * std::numbers::pi : std::atan(lo);
  const double b = std::isinf(hi) ? 0.5 * std::numbers::pi : std::atan(hi);
  for (int i = 1; i < m; ++i) {
    const double t = a + (b - a) * i / m;
    pts.push_back(std::tan(t));
  }
  return pts;
}

}  // namespace

MonotoneMap::MonotoneMap(std::vector<MonotonePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw DomainError("monotone map needs at least one piece");
  for (const auto& piece : pieces_) {
    if (!(piece.upper > piece.lower)) throw DomainError("monotone piece with empty interval");
    int sign = 0;
    for (double x : probe_points(piece.lower, piece.upper)) {
      const double y = piece.forward(x);
      const double back = piece.inverse(y);
      if (std::fabs(back - x) > 1e-9 * std::max(1.0, std::fabs(x)))
        throw DomainError("inverse does not undo the forward map");
      const double d = piece.inverse_derivative(y);
      const int s = (d > 0) - (d < 0);
      if (s == 0) continue;
      if (sign != 0 && s != sign) throw DomainError("inverse derivative changes sign inside a piece");
      sign = s;
    }
  }
}

MonotoneMap MonotoneMap::identity() { return affine(0.0, 1.0); }

MonotoneMap MonotoneMap::affine(double offset, double scale) {
  if (scale == 0.0) throw DomainError("affine map needs a non-zero scale");
  return MonotoneMap({MonotonePiece{-INFINITY, INFINITY,
                                    [=](double x) { return offset + scale * x; },
                                    [=](double y) { return (y - offset) / scale; },
                                    [=](double) { return 1.0 / scale; }}});
}

MonotoneMap MonotoneMap::one_minus_cube() {
  return MonotoneMap({MonotonePiece{-INFINITY, INFINITY, [](double x) { return 1.0 - x * x * x; },
                                    [](double y) { return std::cbrt(1.0 - y); },
                                    [](double y) {
                                      const double c = std::cbrt(1.0 - y);
                                      return -1.0 / (3.0 * c * c);
                                    }}});
}

MonotoneMap MonotoneMap::exponential() {
  return MonotoneMap({MonotonePiece{-INFINITY, INFINITY, [](double x) { return std::exp(x); },
                                    [](double y) { return std::log(y); },
                                    [](double y) { return 1.0 / y; }}});
}

MonotoneMap MonotoneMap::square() {
  return MonotoneMap({MonotonePiece{-INFINITY, 0.0, [](double x) { return x * x; },
                                    [](double y) { return -std::sqrt(y); },
                                    [](double y) { return -0.5 / std::sqrt(y); }},
                      MonotonePiece{0.0, INFINITY, [](double x) { return x * x; },
                                    [](double y) { return std::sqrt(y); },
                                    [](double y) { return 0.5 / std::sqrt(y); }}});
}

GridDensity push_density(const std::function<double(double)>& source_density, const MonotoneMap& map,
                         const std::vector<double>& grid) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    for (const auto& piece : map.pieces()) {
      const double x = piece.inverse(y);
      if (!(x >= piece.lower && x <= piece.upper)) continue;
      const double v = source_density(x) * std::fabs(piece.inverse_derivative(y));
      if (std::isfinite(v)) out[i] += v;
    }
  }
  return GridDensity(grid, std::move(out));
}

GridDensity push_density(const Distribution& source, const MonotoneMap& map,
                         const std::vector<double>& grid) {
  // Pieces must cover the source support.
  auto [lo, hi] = source.support();
  double covered_lo = INFINITY, covered_hi = -INFINITY;
  for (const auto& piece : map.pieces()) {
    covered_lo = std::min(covered_lo, piece.lower);
    covered_hi = std::max(covered_hi, piece.upper);
  }
  if (covered_lo > lo || covered_hi < hi) throw DomainError("map pieces do not cover the source support");
  return push_density([&source](double x) { return mass_or_density(source, x); }, map, grid);
}

// --- convolution ----------------------------------------------------------

GridDensity convolve(const GridDensity& f, const GridDensity& g) {
  const double hf = f.uniform_step(), hg = g.uniform_step();
  if (hf == 0.0 || hg == 0.0) throw ShapeError("convolution needs uniform grids");
  if (std::fabs(hf - hg) > 1e-9 * std::max(hf, hg)) throw ShapeError("convolution grids differ in step");
  const double h = hf;
  const std::size_t nf = f.size(), ng = g.size();
  const std::size_t n = nf + ng - 1;
  std::vector<double> y(n, 0.0);
  const auto& a = f.ordinates();
  const auto& b = g.ordinates();
  for (std::size_t i = 0; i < nf; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < ng; ++j) y[i + j] += a[i] * b[j];
  }
  // Trapezoid rule over the overlap: halve the two end terms of each sum.
  std::vector<double> x(n);
  const double x0 = f.abscissae().front() + g.abscissae().front();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t first = k >= ng - 1 ? k - (ng - 1) : 0;
    const std::size_t last = std::min(k, nf - 1);
    y[k] -= 0.5 * (a[first] * b[k - first] + a[last] * b[k - last]);
    x[k] = x0 + static_cast<double>(k) * h;
    y[k] = std::max(0.0, y[k] * h);
  }
  return GridDensity(std::move(x), std::move(y));
}

// --- correlation and the bivariate normal ----------------------------------

double correlation(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw DomainError("correlation needs at least two pairs");
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedError("correlation of a constant coordinate");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double bivariate_normal_pdf(const BivariateNormal& p, double x, double y) {
  if (!(p.sigma_x > 0) || !(p.sigma_y > 0)) throw DomainError("bivariate normal needs positive sigmas");
  if (!(std::fabs(p.r) < 1)) throw DomainError("degenerate bivariate normal: |r| must be below 1");
  const double u = (x - p.mean_x) / p.sigma_x;
  const double v = (y - p.mean_y) / p.sigma_y;
  const double one_minus_r2 = 1.0 - p.r * p.r;
  const double quad = (u * u - 2.0 * p.r * u * v + v * v) / one_minus_r2;
  return std::exp(-0.5 * quad) /
         (2.0 * std::numbers::pi * p.sigma_x * p.sigma_y * std::sqrt(one_minus_r2));
}

Rational encounter_probability(const Rational& window, const Rational& wait) {
  if (window <= 0 || wait <= 0) throw DomainError("window and wait must be positive");
  if (wait > window) throw DomainError("wait cannot exceed the window");
  const Rational free = (window - wait) / window;
  return Rational(1) - free * free;
}

}  // namespace classprob
