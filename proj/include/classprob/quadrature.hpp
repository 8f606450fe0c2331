#pragma once

#include <functional>

namespace classprob {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b] to the given
/// absolute tolerance. Intervals are bisected until the Kronrod-Gauss
/// difference of every leaf is below its share of the tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, int max_depth = 60);

/// Integral over the whole real line via x = t / (1 - t^2).
QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double abs_tol = 1e-12);

/// Integral over [a, inf) via x = a + t / (1 - t).
QuadratureResult integrate_upper_half(const std::function<double(double)>& f, double a,
                                      double abs_tol = 1e-12);

}  // namespace classprob
