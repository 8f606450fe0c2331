#include "classprob/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "classprob/errors.hpp"

namespace classprob {

namespace {

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  return labels;
}

template <class Row>
void check_square(const std::vector<std::string>& labels, const std::vector<Row>& rows) {
  if (rows.empty()) throw ShapeError("transition matrix needs at least one state");
  if (labels.size() != rows.size()) throw ShapeError("one label per state required");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ShapeError("transition matrix must be square");
}

// Solves A x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (std::fabs(a[piv][c]) < 1e-300) throw NumericError("singular system");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw NumericError("singular system");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TransitionMatrix::TransitionMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> rows)
    : labels_(std::move(labels)), rows_(std::move(rows)) {
  check_square(labels_, rows_);
  for (const auto& r : rows_) {
    double s = 0.0;
    for (double v : r) {
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError("transition probabilities must lie in [0, 1]");
      s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw DomainError("every row must sum to 1");
  }
}

TransitionMatrix::TransitionMatrix(std::vector<std::vector<double>> rows)
    : TransitionMatrix(default_labels(rows.size()), std::vector<std::vector<double>>(rows)) {}

TransitionMatrix TransitionMatrix::identity(std::vector<std::string> labels) {
  const std::size_t k = labels.size();
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) rows[i][i] = 1.0;
  return TransitionMatrix(std::move(labels), std::move(rows));
}

RationalTransitionMatrix::RationalTransitionMatrix(std::vector<std::string> labels,
                                                   std::vector<std::vector<Rational>> rows)
    : labels_(std::move(labels)), rows_(std::move(rows)) {
  check_square(labels_, rows_);
  for (const auto& r : rows_) {
    Rational s;
    for (const auto& v : r) {
      if (v < 0 || v > 1) throw DomainError("transition probabilities must lie in [0, 1]");
      s += v;
    }
    if (s != 1) throw DomainError("every row must sum to exactly 1");
  }
}

TransitionMatrix RationalTransitionMatrix::to_double() const {
  std::vector<std::vector<double>> rows;
  for (const auto& r : rows_) {
    std::vector<double> row;
    for (const auto& v : r) row.push_back(v.to_double());
    rows.push_back(std::move(row));
  }
  return TransitionMatrix(labels_, std::move(rows));
}

StateDistribution::StateDistribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw ShapeError("distribution over no states");
  double s = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw DomainError("state probabilities must be non-negative");
    s += v;
  }
  if (std::fabs(s - 1.0) > 1e-12) throw DomainError("state probabilities must sum to 1");
}

StateDistribution StateDistribution::point_mass(std::size_t size, std::size_t state) {
  if (state >= size) throw ShapeError("state index out of range");
  std::vector<double> p(size, 0.0);
  p[state] = 1.0;
  return StateDistribution(std::move(p));
}

StateDistribution StateDistribution::uniform(std::size_t size) {
  return StateDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b) {
  if (a.size() != b.size()) throw ShapeError("matrix dimensions differ");
  const std::size_t k = a.size();
  std::vector<std::vector<double>> c(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = 0; m < k; ++m) {
      const double aim = a(i, m);
      if (aim == 0.0) continue;
      for (std::size_t j = 0; j < k; ++j) c[i][j] += aim * b(m, j);
    }
  return TransitionMatrix(TransitionMatrix::Unchecked{}, a.labels(), std::move(c));
}

RationalTransitionMatrix multiply(const RationalTransitionMatrix& a, const RationalTransitionMatrix& b) {
  if (a.size() != b.size()) throw ShapeError("matrix dimensions differ");
  const std::size_t k = a.size();
  std::vector<std::vector<Rational>> c(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = 0; m < k; ++m) {
      if (a(i, m) == 0) continue;
      for (std::size_t j = 0; j < k; ++j) c[i][j] += a(i, m) * b(m, j);
    }
  return RationalTransitionMatrix(a.labels(), std::move(c));
}

StateDistribution step(const StateDistribution& d, const TransitionMatrix& p) {
  if (d.size() != p.size()) throw ShapeError("distribution and matrix dimensions differ");
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out[j] += d[i] * p(i, j);
  return StateDistribution(std::move(out));
}

std::vector<Rational> step(const std::vector<Rational>& d, const RationalTransitionMatrix& p) {
  if (d.size() != p.size()) throw ShapeError("distribution and matrix dimensions differ");
  std::vector<Rational> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (d[i] == 0) continue;
    for (std::size_t j = 0; j < p.size(); ++j) out[j] += d[i] * p(i, j);
  }
  return out;
}

TransitionMatrix n_step(const TransitionMatrix& p, long n) {
  if (n < 0) throw DomainError("n must be non-negative");
  TransitionMatrix result = TransitionMatrix::identity(p.labels());
  TransitionMatrix base = p;
  for (; n > 0; n >>= 1) {
    if (n & 1) result = multiply(result, base);
    if (n > 1) base = multiply(base, base);
  }
  return result;
}

RationalTransitionMatrix n_step(const RationalTransitionMatrix& p, long n) {
  if (n < 0) throw DomainError("n must be non-negative");
  const std::size_t k = p.size();
  std::vector<std::vector<Rational>> id(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
  RationalTransitionMatrix result(p.labels(), std::move(id));
  RationalTransitionMatrix base = p;
  for (; n > 0; n >>= 1) {
    if (n & 1) result = multiply(result, base);
    if (n > 1) base = multiply(base, base);
  }
  return result;
}

std::optional<long> is_ergodic(const TransitionMatrix& p, long max_power) {
  if (max_power < 1) throw DomainError("max_power must be at least 1");
  const std::size_t k = p.size();
  std::vector<std::vector<char>> one(k, std::vector<char>(k)), cur;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) one[i][j] = p(i, j) > 0.0;
  cur = one;
  for (long s = 1;; ++s) {
    bool all = true;
    for (const auto& r : cur)
      for (char v : r) all = all && v;
    if (all) return s;
    if (s == max_power) return std::nullopt;
    std::vector<std::vector<char>> next(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t m = 0; m < k; ++m)
        if (cur[i][m])
          for (std::size_t j = 0; j < k; ++j) next[i][j] = next[i][j] || one[m][j];
    if (next == cur) return std::nullopt;  // pattern has stopped changing
    cur = std::move(next);
  }
}

StateDistribution stationary(const TransitionMatrix& p) {
  const std::size_t k = p.size();
  const long bound = static_cast<long>(k * k);
  if (!is_ergodic(p, std::max(1L, bound))) throw UndefinedError("chain has no unique limiting distribution");
  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  std::vector<std::vector<double>> a(k, std::vector<double>(k));
  std::vector<double> b(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = p(j, i) - (i == j ? 1.0 : 0.0);
  std::fill(a[k - 1].begin(), a[k - 1].end(), 1.0);
  b[k - 1] = 1.0;
  std::vector<double> pi = solve(std::move(a), std::move(b));
  for (double& v : pi) v = std::max(0.0, v);

  // Cross-check against a row of P^(2^j).
  TransitionMatrix power = p;
  double gap = 1.0;
  for (int j = 0; j < 60 && gap > 1e-12; ++j) {
    power = multiply(power, power);
    gap = 0.0;
    for (std::size_t i = 0; i < k; ++i) gap = std::max(gap, std::fabs(power(0, i) - pi[i]));
  }
  if (gap > 1e-8) throw NumericError("linear solve disagrees with matrix powers");
  double s = 0.0;
  for (double v : pi) s += v;
  for (double& v : pi) v /= s;
  return StateDistribution(std::move(pi));
}

std::vector<Rational> stationary(const RationalTransitionMatrix& p) {
  const std::size_t k = p.size();
  if (!is_ergodic(p.to_double(), std::max<long>(1, static_cast<long>(k * k))))
    throw UndefinedError("chain has no unique limiting distribution");
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  std::vector<Rational> b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = p(j, i) - Rational(i == j ? 1 : 0);
  for (auto& v : a[k - 1]) v = 1;
  b[k - 1] = 1;
  return solve(std::move(a), std::move(b));
}

RationalTransitionMatrix bernoulli_laplace_chain(long n) {
  if (n < 1) throw DomainError("need at least one ball per urn");
  const auto k = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(k));
  const Rational n2(n * n);
  for (long w = 0; w <= n; ++w) {
    auto& row = rows[static_cast<std::size_t>(w)];
    if (w > 0) row[static_cast<std::size_t>(w - 1)] = Rational(w * w) / n2;
    if (w < n) row[static_cast<std::size_t>(w + 1)] = Rational((n - w) * (n - w)) / n2;
    row[static_cast<std::size_t>(w)] = Rational(2 * w * (n - w)) / n2;
  }
  return RationalTransitionMatrix(default_labels(k), std::move(rows));
}

std::vector<Rational> bernoulli_laplace_stationary(long n) {
  if (n < 1) throw DomainError("need at least one ball per urn");
  const BigInt total = binomial(2 * n, n);
  std::vector<Rational> pi;
  for (long w = 0; w <= n; ++w) {
    const BigInt c = binomial(n, w);
    pi.emplace_back(c * c, total);
  }
  return pi;
}

double expected_white(long n, long r) {
  if (n < 1) throw DomainError("need at least one ball per urn");
  if (r < 0) throw DomainError("r must be non-negative");
  const double half = 0.5 * static_cast<double>(n);
  return half + half * std::pow(1.0 - 2.0 / static_cast<double>(n), static_cast<double>(r));
}

Rational expected_white_exact(long n, long r) {
  if (n < 1) throw DomainError("need at least one ball per urn");
  if (r < 0) throw DomainError("r must be non-negative");
  const Rational half(n, 2);
  return half + half * pow(Rational(n - 2, n), r);
}

UrnMatrix three_urn_expected(long n, long r) {
  if (n < 1) throw DomainError("need at least one ball per urn");
  if (r < 0) throw DomainError("r must be non-negative");
  UrnMatrix m{};
  for (int u = 0; u < 3; ++u) m[u][u] = static_cast<double>(n);
  // Urn sizes when each move starts: n, n + 1, n + 1.
  const double sizes[3] = {static_cast<double>(n), static_cast<double>(n + 1), static_cast<double>(n + 1)};
  for (long c = 0; c < r; ++c)
    for (int from = 0; from < 3; ++from) {
      const int to = (from + 1) % 3;
      for (int k = 0; k < 3; ++k) {
        const double moved = m[from][k] / sizes[from];
        m[from][k] -= moved;
        m[to][k] += moved;
      }
    }
  return m;
}

void write_csv(std::ostream& os, const TransitionMatrix& p) {
  os << "from";
  for (const auto& l : p.labels()) os << ',' << l;
  os << '\n';
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << p.labels()[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof buf, ",%.12f", p(i, j));
      os << buf;
    }
    os << '\n';
  }
}

void write_csv(std::ostream& os, const RationalTransitionMatrix& p) {
  os << "from";
  for (const auto& l : p.labels()) os << ',' << l;
  os << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << p.labels()[i];
    for (std::size_t j = 0; j < p.size(); ++j) os << ',' << p(i, j).str();
    os << '\n';
  }
}

}  // namespace classprob
