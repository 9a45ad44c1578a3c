#pragma once

#include <functional>

namespace fbd {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for a unimodal function on [lo, hi]. Stops when the
/// bracket is narrower than `abs_tol`.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double abs_tol = 1e-10, int max_iters = 500);

struct Quadrature {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss–Kronrod on [a, b]. Throws NumericFailure when the error
/// estimate stays above `rel_tol`·|value| (plus `abs_floor`).
Quadrature integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12,
                              double abs_floor = 0.0);

/// Root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
double find_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-15);

}  // namespace fbd
