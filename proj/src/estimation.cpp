#include "classprob/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "classprob/errors.hpp"

namespace classprob {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

bool parse_double(const std::string& field, double& out) {
  std::istringstream is(field);
  is >> out;
  return is && (is >> std::ws).eof();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Cholesky {
  std::vector<std::vector<double>> l;
  double condition;
};

Cholesky cholesky(const std::vector<std::vector<double>>& n) {
  const std::size_t k = n.size();
  std::vector<std::vector<double>> l(k, std::vector<double>(k, 0.0));
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, n[i][i]);
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double d = n[j][j];
    for (std::size_t m = 0; m < j; ++m) d -= l[j][m] * l[j][m];
    if (!(d > 1e-14 * scale)) throw NumericError("singular normal equations");
    l[j][j] = std::sqrt(d);
    dmin = std::min(dmin, l[j][j]);
    dmax = std::max(dmax, l[j][j]);
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = n[i][j];
      for (std::size_t m = 0; m < j; ++m) s -= l[i][m] * l[j][m];
      l[i][j] = s / l[j][j];
    }
  }
  return {std::move(l), (dmax / dmin) * (dmax / dmin)};
}

std::vector<double> cholesky_solve(const Cholesky& c, std::vector<double> b) {
  const std::size_t k = b.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t m = 0; m < i; ++m) b[i] -= c.l[i][m] * b[m];
    b[i] /= c.l[i][i];
  }
  for (std::size_t i = k; i-- > 0;) {
    for (std::size_t m = i + 1; m < k; ++m) b[i] -= c.l[m][i] * b[m];
    b[i] /= c.l[i][i];
  }
  return b;
}

FitResult finish(const LinearSystem& sys, std::vector<double> x, double objective) {
  FitResult r;
  r.residuals = sys.residuals(x);
  r.estimates = std::move(x);
  r.m2 = gauss_bracket(r.residuals, r.residuals) / static_cast<double>(sys.observations() - sys.unknowns());
  r.objective = objective;
  return r;
}

double power_sum(const std::vector<double>& v, int p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::fabs(x), p);
  return s;
}

}  // namespace

LinearSystem::LinearSystem(std::vector<std::vector<double>> coefficients, std::vector<double> free_terms)
    : a_(std::move(coefficients)), w_(std::move(free_terms)) {
  if (a_.empty() || a_.front().empty()) throw ShapeError("need at least one equation and one unknown");
  const std::size_t k = a_.front().size();
  for (const auto& row : a_)
    if (row.size() != k) throw ShapeError("every equation needs the same number of coefficients");
  if (w_.size() != a_.size()) throw ShapeError("one free term per equation required");
  if (a_.size() <= k) throw ShapeError("need more equations than unknowns");
  for (const auto& row : a_)
    for (double v : row)
      if (!std::isfinite(v)) throw DomainError("coefficients must be finite");
  for (double v : w_)
    if (!std::isfinite(v)) throw DomainError("free terms must be finite");

  // Rank by elimination with partial pivoting.
  auto m = a_;
  double scale = 0.0;
  for (const auto& row : m) scale = std::max(scale, max_abs(row));
  std::size_t rank_row = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = rank_row;
    for (std::size_t r = rank_row; r < m.size(); ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (!(std::fabs(m[piv][c]) > 1e-10 * scale)) throw NumericError("coefficient matrix is rank deficient");
    std::swap(m[rank_row], m[piv]);
    for (std::size_t r = rank_row + 1; r < m.size(); ++r) {
      const double f = m[r][c] / m[rank_row][c];
      for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[rank_row][j];
    }
    ++rank_row;
  }
}

LinearSystem LinearSystem::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("empty system file");
  const auto header = split_csv(line);
  double probe;
  if (header.size() < 2) throw ShapeError("need at least one coefficient column and a w column");
  if (std::all_of(header.begin(), header.end(), [&](const std::string& f) { return parse_double(f, probe); }))
    throw ParameterError("system file needs a header row");
  std::vector<std::vector<double>> a;
  std::vector<double> w;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) throw ShapeError("row width differs from the header");
    std::vector<double> row;
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) throw ParameterError("not a number: " + f);
      row.push_back(v);
    }
    w.push_back(row.back());
    row.pop_back();
    a.push_back(std::move(row));
  }
  return LinearSystem(std::move(a), std::move(w));
}

std::vector<double> LinearSystem::column(std::size_t j) const {
  std::vector<double> c;
  for (const auto& row : a_) c.push_back(row.at(j));
  return c;
}

std::vector<double> LinearSystem::residuals(const std::vector<double>& x) const {
  if (x.size() != unknowns()) throw ShapeError("estimate length differs from the number of unknowns");
  std::vector<double> v(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    double s = w_[i];
    for (std::size_t j = 0; j < x.size(); ++j) s += a_[i][j] * x[j];
    v[i] = s;
  }
  return v;
}

double gauss_bracket(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) throw ShapeError("bracket operands differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

FitResult weighted_least_squares(const LinearSystem& sys, const std::vector<double>& weights) {
  const std::size_t n = sys.observations(), k = sys.unknowns();
  if (weights.size() != n) throw ShapeError("one weight per equation required");
  for (double p : weights)
    if (!(p > 0) || !std::isfinite(p)) throw DomainError("weights must be positive");
  const auto& a = sys.coefficients();
  const auto& w = sys.free_terms();
  // [paa] x + [pab] y + ... + [paw] = 0
  std::vector<std::vector<double>> normal(k, std::vector<double>(k, 0.0));
  std::vector<double> rhs(k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < k; ++r) {
      const double pa = weights[i] * a[i][r];
      for (std::size_t c = 0; c < k; ++c) normal[r][c] += pa * a[i][c];
      rhs[r] -= pa * w[i];
    }
  const Cholesky chol = cholesky(normal);
  FitResult r = finish(sys, cholesky_solve(chol, rhs), 0.0);
  for (std::size_t i = 0; i < n; ++i) r.objective += weights[i] * r.residuals[i] * r.residuals[i];
  r.ill_conditioned = chol.condition > 1e8;
  return r;
}

FitResult least_squares(const LinearSystem& sys) {
  const std::size_t n = sys.observations(), k = sys.unknowns();
  std::vector<std::vector<double>> normal(k, std::vector<double>(k));
  std::vector<double> rhs(k);
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < k; ++j) cols.push_back(sys.column(j));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) normal[r][c] = gauss_bracket(cols[r], cols[c]);
    rhs[r] = -gauss_bracket(cols[r], sys.free_terms());
  }
  const Cholesky chol = cholesky(normal);
  FitResult r = finish(sys, cholesky_solve(chol, rhs), 0.0);
  r.objective = gauss_bracket(r.residuals, r.residuals);
  r.ill_conditioned = chol.condition > 1e8;
  (void)n;
  return r;
}

FitResult minimax_fit(const LinearSystem& sys) {
  const std::size_t n = sys.observations(), k = sys.unknowns();
  const auto& a = sys.coefficients();
  const auto& w = sys.free_terms();
  // With t = t0 + s and t0 = max |w_i| the origin is feasible:
  //    a_i x - s + slack = t0 - w_i,   -a_i x - s + slack = t0 + w_i.
  // Columns: x+ (k), x- (k), s+, s-, then 2n slacks.
  const double t0 = max_abs(w);
  const std::size_t nv = 2 * k + 2, m = 2 * n, cols = nv + m;
  std::vector<std::vector<double>> tab(m, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (int sign = 0; sign < 2; ++sign) {
      auto& row = tab[i + sign * n];
      const double sg = sign == 0 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < k; ++j) {
        row[j] = sg * a[i][j];
        row[k + j] = -sg * a[i][j];
      }
      row[2 * k] = -1.0;
      row[2 * k + 1] = 1.0;
      row[nv + i + sign * n] = 1.0;
      row[cols] = t0 - sg * w[i];
      basis[i + sign * n] = nv + i + sign * n;
    }
  }
  std::vector<double> cost(cols + 1, 0.0);  // reduced costs; last entry is -objective
  cost[2 * k] = 1.0;
  cost[2 * k + 1] = -1.0;

  double scale = 1.0;
  for (const auto& row : a) scale = std::max(scale, max_abs(row));
  const double eps = 1e-12 * scale;
  // Bland's rule: lowest-index entering column, lowest-index leaving basis.
  for (int iter = 0;; ++iter) {
    if (iter > 100000) throw NumericError("simplex did not terminate");
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= eps) continue;
      const double ratio = tab[i][cols] / tab[i][enter];
      if (leave == m || ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw NumericError("minimax program is unbounded");
    const double piv = tab[leave][enter];
    for (double& v : tab[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0.0) continue;
      const double f = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    const double f = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * tab[leave][j];
    basis[leave] = enter;
  }
  std::vector<double> value(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < nv) value[basis[i]] = tab[i][cols];
  std::vector<double> x(k);
  for (std::size_t j = 0; j < k; ++j) x[j] = value[j] - value[k + j];
  FitResult r = finish(sys, std::move(x), 0.0);
  r.objective = max_abs(r.residuals);
  return r;
}

namespace {

// Minimizes sum |v0_i + alpha u_i|^p over alpha >= 0, a convex function of
// alpha, by safeguarded Newton iteration on its derivative.
double line_search(const std::vector<double>& v0, const std::vector<double>& u, int p) {
  const double scale = std::max(max_abs(v0), 1e-300);
  auto deriv = [&](double alpha, double& second) {
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < v0.size(); ++i) {
      const double v = (v0[i] + alpha * u[i]) / scale, w = u[i] / scale;
      const double a = std::fabs(v);
      d1 += std::pow(a, p - 1) * (v < 0 ? -1.0 : 1.0) * w;
      d2 += (p - 1) * std::pow(a, p - 2) * w * w;
    }
    second = d2;
    return d1;
  };
  double d2;
  if (deriv(0.0, d2) >= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (deriv(hi, d2) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return hi;
  }
  double alpha = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double g = deriv(alpha, d2);
    if (g == 0.0) return alpha;
    (g < 0.0 ? lo : hi) = alpha;
    const double newton = d2 > 0.0 ? alpha - g / d2 : -1.0;
    alpha = newton > lo && newton < hi ? newton : 0.5 * (lo + hi);
  }
  return alpha;
}

}  // namespace

FitResult pnorm_fit(const LinearSystem& sys, int k_exponent) {
  if (k_exponent < 1) throw DomainError("exponent k must be at least 1");
  const int p = 2 * k_exponent;
  const std::size_t n = sys.observations();
  const auto& a = sys.coefficients();
  std::vector<double> x = least_squares(sys).estimates;
  std::vector<double> v = sys.residuals(x);
  double obj = power_sum(v, p);
  std::vector<double> weights(n, 1.0);
  std::vector<double> trace{obj};

  auto direction = [&](const std::vector<double>& wts) {
    const auto candidate = weighted_least_squares(sys, wts).estimates;
    std::vector<double> d(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) d[j] = candidate[j] - x[j];
    return d;
  };
  auto slope = [&](const std::vector<double>& d) {
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ad = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j) ad += a[i][j] * d[j];
      g += std::pow(std::fabs(v[i]), p - 1) * (v[i] < 0 ? -1.0 : 1.0) * ad;
    }
    return g;
  };

  for (int iter = 0; iter < 200; ++iter) {
    const double vmax = max_abs(v);
    if (vmax == 0.0 || k_exponent == 1) break;
    std::vector<double> fresh(n);
    for (std::size_t i = 0; i < n; ++i) {
      fresh[i] = std::max(std::pow(std::fabs(v[i]) / vmax, p - 2), 1e-300);
      weights[i] = 0.5 * weights[i] + 0.5 * fresh[i];
    }
    auto d = direction(weights);
    // Damped weights can point uphill; the current weights cannot.
    if (slope(d) >= 0.0) {
      weights = fresh;
      d = direction(weights);
    }
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d.size(); ++j) u[i] += a[i][j] * d[j];
    const double alpha = line_search(v, u, p);
    std::vector<double> next(x.size());
    double change = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      next[j] = x[j] + alpha * d[j];
      change = std::max(change, std::fabs(next[j] - x[j]));
    }
    const auto next_v = sys.residuals(next);
    const double next_obj = power_sum(next_v, p);
    if (next_obj <= obj) {
      x = next;
      v = next_v;
      obj = next_obj;
    } else {
      change = 0.0;  // no representable improvement along the direction
    }
    trace.push_back(obj);
    if (change <= 1e-10 * (1.0 + max_abs(x))) {
      FitResult r = finish(sys, x, obj);
      r.trace = std::move(trace);
      return r;
    }
  }
  if (k_exponent == 1 || max_abs(v) == 0.0) {
    FitResult r = finish(sys, x, obj);
    r.trace = std::move(trace);
    return r;
  }
  throw NumericError("pnorm_fit did not converge in 200 iterations");
}

MeanError mean_with_error(const Sample& s) {
  const auto& x = s.values();
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("need at least two observations");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var_mean = ss / (static_cast<double>(n) * static_cast<double>(n - 1));
  return {mean, var_mean, std::sqrt(var_mean)};
}

ConfidenceInterval confidence_interval(const Sample& s, double coverage) {
  if (!(coverage > 0 && coverage < 1)) throw DomainError("coverage must lie in (0, 1)");
  const MeanError me = mean_with_error(s);
  const double z = standard_normal_quantile(0.5 * (1.0 + coverage));
  const double one_m = standard_normal_cdf(1.0) - standard_normal_cdf(-1.0);
  return {me.mean - z * me.mean_square_error, me.mean + z * me.mean_square_error, z, one_m};
}

Rational bervi_coverage(long n) {
  if (n < 2) throw DomainError("need at least two observations");
  return Rational(1) - Rational(BigInt(1), BigInt(1) << static_cast<unsigned long>(n - 1));
}

}  // namespace classprob
