#pragma once

// Exponent parameters (p, q, s, a, b, ...) that remember whether they are
// known exactly. Exact parameters let boundary cases such as s = n/p or
// alpha = 0 be decided without floating-point doubt.

#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace funspace {

using Rational = boost::rational<long long>;

class Param {
 public:
  Param() = default;
  Param(double v) : Param(from_double(v)) {}  // NOLINT: implicit for ergonomic literals

  static Param exact(Rational r);
  static Param exact(long long num, long long den = 1) { return exact(Rational(num, den)); }
  /// Dyadic doubles (x * 2^20 integral) become exact; others stay floating.
  static Param from_double(double v);
  static Param floating(double v);
  static Param infinity();
  /// Accepts "inf", "infinity", "1/2", "-3", "0.25", "0.3".
  static Param parse(std::string_view text);

  double value() const noexcept { return value_; }
  bool is_infinite() const noexcept { return infinite_; }
  bool is_exact() const noexcept { return exact_.has_value() || infinite_; }
  const std::optional<Rational>& rational() const noexcept { return exact_; }

  /// 1/x with 1/inf = 0 and 1/0 = inf.
  Param reciprocal() const;

  std::string to_string() const;

  Param operator-() const;
  friend Param operator+(const Param& x, const Param& y);
  friend Param operator-(const Param& x, const Param& y) { return x + (-y); }
  friend Param operator*(const Param& x, const Param& y);

 private:
  double value_ = 0.0;
  bool infinite_ = false;
  std::optional<Rational> exact_;
};

/// Sign of a finite quantity: exact when the parameter is exact, otherwise
/// values within `tol` of zero count as zero and are flagged.
struct SignDecision {
  int sign = 0;
  bool flagged = false;
};

SignDecision decide_sign(const Param& x, double tol = 1e-12);

/// Compare x with y (finite or infinite) with the same exactness rules.
SignDecision compare(const Param& x, const Param& y, double tol = 1e-12);

}  // namespace funspace
