#pragma once

#include <functional>

namespace funspace::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
};

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_intervals = 2000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

/// Integral over [0, inf) via the map x = y / (1 - y). The integrand must decay
/// fast enough for the transformed integrand to vanish at y = 1.
Result gauss_kronrod_half_line(const std::function<double(double)>& f, const Options& opt = {});

}  // namespace funspace::quad
