#pragma once

// Weights w on (0, T) and the one-dimensional integrals the Lorentz
// functionals are built from:
//
//   integral(t1, t2) = int_{t1}^{t2} tau^{q/p - 1} w(tau)^q dtau      (q < inf)
//   sup(t1, t2)      = sup_{tau in [t1, t2]} tau^{1/p} w(tau)          (q = inf)
//
// with t1 = 0 meaning the limit at the origin. Both return +inf on divergence.

#include <string>
#include <variant>
#include <vector>

#include "funspace/param.hpp"

namespace funspace {

enum class Method { ClosedForm, Quadrature, Empirical };

std::string to_string(Method m);

struct Evaluated {
  double value = 0.0;
  double est_error = 0.0;
  Method method = Method::ClosedForm;
};

/// w(t) = c * t^a * (1 + log(T_ref / t))^b with T_ref = max(T, 1).
///
/// T_ref keeps the log factor >= 1 on (0, T); near 0 it is equivalent to
/// |log t|^b, which is all the asymptotic criteria depend on.
class PowerLogWeight {
 public:
  PowerLogWeight(double c, Param a, Param b, double domain_end);

  /// w == 1 on (0, T).
  static PowerLogWeight unit(double domain_end) { return PowerLogWeight(1.0, Param::exact(0), Param::exact(0), domain_end); }

  double scale() const noexcept { return c_; }
  const Param& power() const noexcept { return a_; }
  const Param& log_power() const noexcept { return b_; }
  double domain_end() const noexcept { return t_end_; }
  double log_reference() const noexcept { return t_ref_; }

  double operator()(double t) const;
  /// 1 + log(T_ref / t).
  double log_factor(double t) const;

  /// w^e, again a power-log weight.
  PowerLogWeight powered(const Param& e) const;
  PowerLogWeight with_domain_end(double t_end) const { return PowerLogWeight(c_, a_, b_, t_end); }

  Evaluated integral(const Param& inv_p, const Param& q, double t1, double t2) const;
  Evaluated sup(const Param& inv_p, double t1, double t2) const;

  /// Whether int_0^t tau^{q/p-1} w^q (q < inf) or sup_{(0,t)} tau^{1/p} w
  /// (q = inf) is finite; decided from the exponents alone.
  bool origin_finite(const Param& inv_p, const Param& q) const;

 private:
  double c_;
  Param a_, b_;
  double t_end_;
  double t_ref_;
};

/// Piecewise-constant weight: w = values[i] on [knots[i], knots[i+1]),
/// values[0] on (0, knots[0]) and values.back() beyond the last knot.
class TabulatedWeight {
 public:
  TabulatedWeight(std::vector<double> knots, std::vector<double> values, double domain_end);

  /// Base weight 1 on (0, 1] plus narrow spikes of height `heights[i]` on
  /// [2^-k, 2^-k (1 + 2^-k)) for k = ks[i]. With heights growing fast enough
  /// the mass on [t, 2t) dominates everything below t and Delta_2 fails.
  static TabulatedWeight dyadic_spikes(const std::vector<int>& ks, const std::vector<double>& heights);
  /// Default counterexample: k = m^2 (m = 1..6) with heights k^2 2^k.
  static TabulatedWeight default_spikes();

  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double domain_end() const noexcept { return t_end_; }

  double operator()(double t) const;
  TabulatedWeight powered(const Param& e) const;

  Evaluated integral(const Param& inv_p, const Param& q, double t1, double t2) const;
  Evaluated sup(const Param& inv_p, double t1, double t2) const;
  bool origin_finite(const Param& inv_p, const Param& q) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  double t_end_;
};

using Weight = std::variant<PowerLogWeight, TabulatedWeight>;

double weight_value(const Weight& w, double t);
double weight_domain_end(const Weight& w);
Weight weight_powered(const Weight& w, const Param& e);
bool is_tabulated(const Weight& w);
Evaluated weight_integral(const Weight& w, const Param& inv_p, const Param& q, double t1, double t2);
Evaluated weight_sup(const Weight& w, const Param& inv_p, double t1, double t2);
bool weight_origin_finite(const Weight& w, const Param& inv_p, const Param& q);

namespace detail {

/// int_{t1}^{t2} tau^{gamma-1} (1 + log(t_ref/tau))^beta dtau for 0 <= t1 < t2 <= t_ref.
/// Closed form for beta = 0 and for beta a non-negative integer; otherwise
/// Gauss-Kronrod on the log-substituted variable. `alpha_sign` carries the exact
/// sign of gamma so that the divergent/borderline branches are not decided by
/// rounding.
Evaluated power_log_integral(double gamma, int gamma_sign, double beta, double t1, double t2, double t_ref);

/// sup over [t1, t2] of tau^alpha (1 + log(t_ref/tau))^beta (t1 = 0: includes the limit).
double power_log_sup(double alpha, int alpha_sign, double beta, double t1, double t2, double t_ref);

}  // namespace detail

}  // namespace funspace
