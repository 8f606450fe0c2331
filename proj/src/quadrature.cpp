#include "classprob/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace classprob {

namespace {

// Kronrod 15-point abscissae (positive half) and weights; every other node
// is a Gauss 7-point node.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kronrod * half, gauss * half};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           QuadratureResult& acc) {
  Panel p = gauss_kronrod(f, a, b);
  acc.evaluations += 15;
  const double err = std::fabs(p.kronrod - p.gauss);
  if (err <= tol || depth <= 0 || !(b - a > 4 * std::numeric_limits<double>::epsilon() * std::fabs(a))) {
    acc.value += p.kronrod;
    acc.error_estimate += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, 0.5 * tol, depth - 1, acc);
  adapt(f, mid, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth) {
  QuadratureResult acc;
  if (a == b) return acc;
  if (a > b) {
    acc = integrate(f, b, a, abs_tol, max_depth);
    acc.value = -acc.value;
    return acc;
  }
  adapt(f, a, b, abs_tol, max_depth, acc);
  return acc;
}

QuadratureResult integrate_real_line(const std::function<double(double)>& f, double abs_tol) {
  auto g = [&f](double t) {
    const double d = 1.0 - t * t;
    if (d <= 0.0) return 0.0;
    const double x = t / d;
    const double jac = (1.0 + t * t) / (d * d);
    const double v = f(x) * jac;
    return std::isfinite(v) ? v : 0.0;
  };
  // Split at 0 so both halves see a smooth integrand near the centre.
  QuadratureResult left = integrate(g, -1.0, 0.0, 0.5 * abs_tol);
  QuadratureResult right = integrate(g, 0.0, 1.0, 0.5 * abs_tol);
  return {left.value + right.value, left.error_estimate + right.error_estimate,
          left.evaluations + right.evaluations};
}

QuadratureResult integrate_upper_half(const std::function<double(double)>& f, double a,
                                      double abs_tol) {
  auto g = [&f, a](double t) {
    const double d = 1.0 - t;
    if (d <= 0.0) return 0.0;
    const double v = f(a + t / d) / (d * d);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(g, 0.0, 1.0, abs_tol);
}

}  // namespace classprob
