#pragma once

// Independent reference computations for the tests: Boost tanh-sinh/exp-sinh
// quadrature, rearrangements by counting, and seeded random inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "funspace/measure.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// int_{t1}^{t2} tau^{gamma-1} (1 + log(t_ref/tau))^beta dtau, t1 >= 0.
inline double power_log_integral(double gamma, double beta, double t1, double t2, double t_ref) {
  if (t1 == 0.0) {
    // tau = t2 e^{-y}: int_0^inf t2^gamma e^{-gamma y} (L2 + y)^beta dy
    const double L2 = 1.0 + std::log(t_ref / t2);
    boost::math::quadrature::exp_sinh<double> es;
    return std::pow(t2, gamma) * es.integrate([&](double y) {
      const double e = std::exp(-gamma * y);
      return e == 0.0 ? 0.0 : e * std::pow(L2 + y, beta);
    });
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [&](double x) {
        const double tau = std::exp(x);
        return std::pow(tau, gamma) * std::pow(1.0 + std::log(t_ref / tau), beta);
      },
      std::log(t1), std::log(t2));
}

/// B_{p,q;w}(t) for w = c t^a (1 + log(t_ref/t))^b, q < inf.
inline double big_B(double inv_p, double q, double c, double a, double b, double t, double t_ref) {
  return c * std::pow(power_log_integral(q * (inv_p + a), b * q, 0.0, t, t_ref), 1.0 / q);
}

/// f*(t) = inf{lambda >= 0 : #{|f| > lambda} * cell <= t} by direct counting.
class CountingRearrangement {
 public:
  explicit CountingRearrangement(const funspace::SampledFunction& f) : cell_(f.cell_measure()) {
    levels_.push_back(0.0);
    for (double x : f.values()) levels_.push_back(std::fabs(x));
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
    for (double lambda : levels_) {
      std::size_t count = 0;
      for (double x : f.values())
        if (std::fabs(x) > lambda) ++count;
      measure_.push_back(static_cast<double>(count) * cell_);
    }
  }

  double operator()(double t) const {
    for (std::size_t i = 0; i < levels_.size(); ++i)
      if (measure_[i] <= t) return levels_[i];
    return levels_.back();
  }

 private:
  double cell_;
  std::vector<double> levels_;
  std::vector<double> measure_;
};

/// Random step function with zeros and ties.
inline funspace::SampledFunction random_function(Rng& rng, std::size_t cells, double a = 0.0, double b = 1.0) {
  std::vector<double> v(cells);
  for (auto& x : v) {
    const double r = uniform(rng, 0, 1);
    x = r < 0.2 ? 0.0 : (r < 0.4 ? std::round(uniform(rng, -4, 4)) : uniform(rng, -4, 4));
  }
  return funspace::SampledFunction(funspace::Box::interval(a, b), {cells}, std::move(v));
}

inline double rel_err(double x, double y) {
  return std::fabs(x - y) / std::max({std::fabs(x), std::fabs(y), std::numeric_limits<double>::min()});
}

}  // namespace oracle
