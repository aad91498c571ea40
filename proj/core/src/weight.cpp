#include "funspace/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "funspace/error.hpp"
#include "funspace/quadrature.hpp"

namespace funspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_small_nonneg_integer(double x) { return x >= 0.0 && x <= 40.0 && std::floor(x) == x; }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::Quadrature: return "quadrature";
    case Method::Empirical: return "empirical";
  }
  return "unknown";
}

namespace detail {

namespace {

double log_factor(double t, double t_ref) { return 1.0 + std::log(t_ref / t); }

// F(t) = t^gamma * sum_{k=0}^{n} n!/(n-k)! L^{n-k} / gamma^{k+1}; F' = t^{gamma-1} L^n.
double integer_antiderivative(double gamma, int n, double t, double t_ref) {
  const double L = log_factor(t, t_ref);
  double term = std::pow(L, n) / gamma;
  double sum = term;
  for (int k = 0; k < n; ++k) {
    term *= static_cast<double>(n - k) / (L * gamma);
    sum += term;
  }
  return std::pow(t, gamma) * sum;
}

}  // namespace

Evaluated power_log_integral(double gamma, int gamma_sign, double beta, double t1, double t2, double t_ref) {
  if (!(t2 > t1)) return {0.0, 0.0, Method::ClosedForm};
  const double L2 = log_factor(t2, t_ref);

  if (t1 == 0.0) {
    if (gamma_sign < 0) return {kInf, 0.0, Method::ClosedForm};
    if (gamma_sign == 0) {
      if (beta < -1.0) return {std::pow(L2, beta + 1.0) / (-beta - 1.0), 0.0, Method::ClosedForm};
      return {kInf, 0.0, Method::ClosedForm};
    }
    if (beta == 0.0) return {std::pow(t2, gamma) / gamma, 0.0, Method::ClosedForm};
    if (is_small_nonneg_integer(beta))
      return {integer_antiderivative(gamma, static_cast<int>(beta), t2, t_ref), 0.0, Method::ClosedForm};
    // x = gamma * (L(tau) - L(t2)) maps (0, t2) onto (0, inf):
    // integral = t2^gamma / gamma * L2^beta * int_0^inf e^{-x} (1 + x/(gamma L2))^beta dx
    const double scale = gamma * L2;
    auto kernel = [beta, scale](double x) { return std::exp(-x) * std::pow(1.0 + x / scale, beta); };
    const auto r = quad::gauss_kronrod_half_line(kernel, {1e-300, 1e-14, 4000});
    const double pref = std::pow(t2, gamma) / gamma * std::pow(L2, beta);
    return {pref * r.value, pref * r.error, Method::Quadrature};
  }

  if (beta == 0.0) {
    const double lr = std::log(t2 / t1);
    if (gamma_sign == 0) return {lr, 0.0, Method::ClosedForm};
    return {std::pow(t1, gamma) * std::expm1(gamma * lr) / gamma, 0.0, Method::ClosedForm};
  }
  if (gamma_sign > 0 && is_small_nonneg_integer(beta) && (t2 - t1) > 1e-3 * t2) {
    const int n = static_cast<int>(beta);
    return {integer_antiderivative(gamma, n, t2, t_ref) - integer_antiderivative(gamma, n, t1, t_ref), 0.0,
            Method::ClosedForm};
  }
  // s = log(tau / t2) in [log(t1/t2), 0]; integrand t2^gamma e^{gamma s} (L2 - s)^beta
  const double pref = std::pow(t2, gamma);
  auto integrand = [gamma, beta, L2](double s) { return std::exp(gamma * s) * std::pow(L2 - s, beta); };
  const auto r = quad::gauss_kronrod(integrand, std::log(t1 / t2), 0.0, {1e-300, 1e-14, 4000});
  return {pref * r.value, pref * r.error, Method::Quadrature};
}

double power_log_sup(double alpha, int alpha_sign, double beta, double t1, double t2, double t_ref) {
  auto g = [&](double t) { return std::pow(t, alpha) * std::pow(log_factor(t, t_ref), beta); };
  double best = g(t2);
  if (t1 > 0.0) {
    best = std::max(best, g(t1));
  } else {
    double at_origin = 0.0;
    if (alpha_sign < 0) at_origin = kInf;
    else if (alpha_sign == 0) at_origin = beta < 0.0 ? 0.0 : (beta == 0.0 ? 1.0 : kInf);
    best = std::max(best, at_origin);
  }
  // d log g / d log t = alpha - beta / L vanishes at L = beta / alpha
  if (alpha_sign != 0 && beta != 0.0) {
    const double Lstar = beta / alpha;
    if (Lstar >= 1.0) {
      const double tstar = t_ref * std::exp(1.0 - Lstar);
      if (tstar > t1 && tstar < t2) best = std::max(best, g(tstar));
    }
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------

PowerLogWeight::PowerLogWeight(double c, Param a, Param b, double domain_end)
    : c_(c), a_(std::move(a)), b_(std::move(b)), t_end_(domain_end), t_ref_(std::max(domain_end, 1.0)) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidArgument, "weight: scale c must be positive");
  if (a_.is_infinite() || b_.is_infinite())
    fail(ErrorKind::InvalidArgument, "weight: exponents must be finite");
  if (!(domain_end > 0.0) || !std::isfinite(domain_end))
    fail(ErrorKind::InvalidArgument, "weight: domain end must be positive and finite");
}

double PowerLogWeight::log_factor(double t) const { return 1.0 + std::log(t_ref_ / t); }

double PowerLogWeight::operator()(double t) const {
  return c_ * std::pow(t, a_.value()) * std::pow(log_factor(t), b_.value());
}

PowerLogWeight PowerLogWeight::powered(const Param& e) const {
  return PowerLogWeight(std::pow(c_, e.value()), a_ * e, b_ * e, t_end_);
}

Evaluated PowerLogWeight::integral(const Param& inv_p, const Param& q, double t1, double t2) const {
  const Param alpha = inv_p + a_;
  const int sign = decide_sign(alpha).sign;
  const double qv = q.value();
  const double gamma = qv * alpha.value();
  auto r = detail::power_log_integral(gamma, sign, b_.value() * qv, t1, t2, t_ref_);
  const double cq = std::pow(c_, qv);
  r.value *= cq;
  r.est_error *= cq;
  return r;
}

Evaluated PowerLogWeight::sup(const Param& inv_p, double t1, double t2) const {
  const Param alpha = inv_p + a_;
  const int sign = decide_sign(alpha).sign;
  return {c_ * detail::power_log_sup(alpha.value(), sign, b_.value(), t1, t2, t_ref_), 0.0, Method::ClosedForm};
}

bool PowerLogWeight::origin_finite(const Param& inv_p, const Param& q) const {
  const int s = decide_sign(inv_p + a_).sign;
  if (s > 0) return true;
  if (s < 0) return false;
  if (q.is_infinite()) return decide_sign(b_).sign <= 0;
  return compare(b_ * q, Param::exact(-1)).sign < 0;
}

// ---------------------------------------------------------------------------

TabulatedWeight::TabulatedWeight(std::vector<double> knots, std::vector<double> values, double domain_end)
    : knots_(std::move(knots)), values_(std::move(values)), t_end_(domain_end) {
  if (knots_.empty() || knots_.size() != values_.size())
    fail(ErrorKind::InvalidArgument, "tabulated weight: need equally many knots and values");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i] > 0.0) || (i > 0 && !(knots_[i] > knots_[i - 1])))
      fail(ErrorKind::InvalidArgument, "tabulated weight: knots must be positive and strictly increasing");
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
      fail(ErrorKind::InvalidArgument, "tabulated weight: values must be positive and finite");
  }
  if (!(domain_end > 0.0)) fail(ErrorKind::InvalidArgument, "tabulated weight: domain end must be positive");
}

TabulatedWeight TabulatedWeight::dyadic_spikes(const std::vector<int>& ks, const std::vector<double>& heights) {
  if (ks.size() != heights.size() || ks.empty())
    fail(ErrorKind::InvalidArgument, "dyadic_spikes: need one height per spike");
  std::vector<std::pair<int, double>> spikes;
  for (std::size_t i = 0; i < ks.size(); ++i) spikes.emplace_back(ks[i], heights[i]);
  std::sort(spikes.begin(), spikes.end(), [](auto& x, auto& y) { return x.first > y.first; });
  std::vector<double> knots, values;
  const double first = std::ldexp(1.0, -spikes.front().first);
  knots.push_back(first / 2);
  values.push_back(1.0);
  for (auto [k, h] : spikes) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "dyadic_spikes: k must be >= 1");
    const double a = std::ldexp(1.0, -k);
    const double b = a * (1.0 + a);
    knots.push_back(a);
    values.push_back(1.0 + h);
    knots.push_back(b);
    values.push_back(1.0);
  }
  return TabulatedWeight(std::move(knots), std::move(values), 1.0);
}

TabulatedWeight TabulatedWeight::default_spikes() {
  std::vector<int> ks;
  std::vector<double> hs;
  for (int m = 1; m <= 6; ++m) {
    const int k = m * m;
    ks.push_back(k);
    hs.push_back(static_cast<double>(k) * k * std::ldexp(1.0, k));
  }
  return dyadic_spikes(ks, hs);
}

double TabulatedWeight::operator()(double t) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  if (it == knots_.begin()) return values_.front();
  return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

TabulatedWeight TabulatedWeight::powered(const Param& e) const {
  std::vector<double> v(values_);
  for (auto& x : v) x = std::pow(x, e.value());
  return TabulatedWeight(knots_, std::move(v), t_end_);
}

Evaluated TabulatedWeight::integral(const Param& inv_p, const Param& q, double t1, double t2) const {
  if (!(t2 > t1)) return {0.0, 0.0, Method::ClosedForm};
  const double qv = q.value();
  const double g = qv * inv_p.value();
  const bool log_case = decide_sign(inv_p).sign == 0;
  if (t1 == 0.0 && log_case) return {kInf, 0.0, Method::ClosedForm};
  auto piece = [&](double a, double b) {
    if (log_case) return std::log(b / a);
    return (std::pow(b, g) - std::pow(a, g)) / g;
  };
  double sum = 0.0;
  double start = t1;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t1) - knots_.begin());
  while (start < t2) {
    const double end = i < knots_.size() ? std::min(knots_[i], t2) : t2;
    const double w = (*this)(start);
    sum += std::pow(w, qv) * piece(start, end);
    start = end;
    ++i;
  }
  return {sum, 0.0, Method::ClosedForm};
}

Evaluated TabulatedWeight::sup(const Param& inv_p, double t1, double t2) const {
  const double e = inv_p.value();
  double best = 0.0;
  double start = t1;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t1) - knots_.begin());
  while (start < t2) {
    const double end = i < knots_.size() ? std::min(knots_[i], t2) : t2;
    best = std::max(best, std::pow(end, e) * (*this)(start));
    start = end;
    ++i;
  }
  return {best, 0.0, Method::ClosedForm};
}

bool TabulatedWeight::origin_finite(const Param& inv_p, const Param& q) const {
  if (q.is_infinite()) return true;
  return decide_sign(inv_p).sign > 0;
}

// ---------------------------------------------------------------------------

double weight_value(const Weight& w, double t) {
  return std::visit([t](const auto& x) { return x(t); }, w);
}

double weight_domain_end(const Weight& w) {
  return std::visit([](const auto& x) { return x.domain_end(); }, w);
}

Weight weight_powered(const Weight& w, const Param& e) {
  return std::visit([&e](const auto& x) -> Weight { return x.powered(e); }, w);
}

bool is_tabulated(const Weight& w) { return std::holds_alternative<TabulatedWeight>(w); }

Evaluated weight_integral(const Weight& w, const Param& inv_p, const Param& q, double t1, double t2) {
  return std::visit([&](const auto& x) { return x.integral(inv_p, q, t1, t2); }, w);
}

Evaluated weight_sup(const Weight& w, const Param& inv_p, double t1, double t2) {
  return std::visit([&](const auto& x) { return x.sup(inv_p, t1, t2); }, w);
}

bool weight_origin_finite(const Weight& w, const Param& inv_p, const Param& q) {
  return std::visit([&](const auto& x) { return x.origin_finite(inv_p, q); }, w);
}

}  // namespace funspace
