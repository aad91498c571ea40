#include "funspace/param.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "funspace/error.hpp"

namespace funspace {

Param Param::exact(Rational r) {
  Param p;
  p.value_ = boost::rational_cast<double>(r);
  p.exact_ = r;
  return p;
}

Param Param::from_double(double v) {
  if (std::isinf(v)) {
    if (v < 0) fail(ErrorKind::InvalidArgument, "parameter: -inf is not admissible");
    return infinity();
  }
  if (std::isnan(v)) fail(ErrorKind::InvalidArgument, "parameter: NaN");
  constexpr double kScale = 1048576.0;  // 2^20
  const double scaled = v * kScale;
  if (std::fabs(scaled) < 9.0e15 && std::floor(scaled) == scaled)
    return exact(Rational(static_cast<long long>(scaled), 1048576LL));
  return floating(v);
}

Param Param::floating(double v) {
  Param p;
  p.value_ = v;
  return p;
}

Param Param::infinity() {
  Param p;
  p.value_ = std::numeric_limits<double>::infinity();
  p.infinite_ = true;
  return p;
}

Param Param::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "infinity" || text == "+inf" || text == "Inf")
    return infinity();
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    long long num = 0, den = 0;
    const auto n = text.substr(0, slash);
    const auto d = text.substr(slash + 1);
    auto r1 = std::from_chars(n.data(), n.data() + n.size(), num);
    auto r2 = std::from_chars(d.data(), d.data() + d.size(), den);
    if (r1.ec != std::errc{} || r1.ptr != n.data() + n.size() || r2.ec != std::errc{} ||
        r2.ptr != d.data() + d.size() || den == 0)
      fail(ErrorKind::ParseError, "cannot parse rational parameter '" + std::string(text) + "'");
    return exact(Rational(num, den));
  }
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    fail(ErrorKind::ParseError, "cannot parse parameter '" + s + "'");
  // decimal literals with few digits are exact decimals: 0.3 -> 3/10
  const auto dot = s.find('.');
  if (dot != std::string::npos && s.find_first_of("eE") == std::string::npos) {
    const std::size_t decimals = s.size() - dot - 1;
    if (decimals <= 9) {
      long long scale = 1;
      for (std::size_t i = 0; i < decimals; ++i) scale *= 10;
      const double scaled = std::round(v * static_cast<double>(scale));
      if (std::fabs(scaled) < 9.0e15) return exact(Rational(static_cast<long long>(scaled), scale));
    }
  }
  return from_double(v);
}

Param Param::reciprocal() const {
  if (infinite_) return exact(Rational(0));
  if (exact_) {
    if (exact_->numerator() == 0) return infinity();
    return exact(Rational(1) / *exact_);
  }
  if (value_ == 0.0) return infinity();
  return floating(1.0 / value_);
}

std::string Param::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  if (exact_) {
    if (exact_->denominator() == 1)
      os << exact_->numerator();
    else
      os << exact_->numerator() << '/' << exact_->denominator();
    return os.str();
  }
  os.precision(17);
  os << value_;
  return os.str();
}

Param Param::operator-() const {
  if (infinite_) fail(ErrorKind::InvalidArgument, "parameter: cannot negate infinity");
  if (exact_) return exact(-*exact_);
  return floating(-value_);
}

Param operator+(const Param& x, const Param& y) {
  if (x.infinite_ || y.infinite_) fail(ErrorKind::InvalidArgument, "parameter arithmetic on infinity");
  if (x.exact_ && y.exact_) return Param::exact(*x.exact_ + *y.exact_);
  return Param::floating(x.value_ + y.value_);
}

Param operator*(const Param& x, const Param& y) {
  if (x.infinite_ || y.infinite_) fail(ErrorKind::InvalidArgument, "parameter arithmetic on infinity");
  if (x.exact_ && y.exact_) return Param::exact(*x.exact_ * *y.exact_);
  return Param::floating(x.value_ * y.value_);
}

SignDecision decide_sign(const Param& x, double tol) {
  if (x.is_infinite()) return {1, false};
  if (x.rational()) {
    const auto& r = *x.rational();
    return {r.numerator() > 0 ? 1 : (r.numerator() < 0 ? -1 : 0), false};
  }
  if (std::fabs(x.value()) <= tol) return {0, true};
  return {x.value() > 0 ? 1 : -1, false};
}

SignDecision compare(const Param& x, const Param& y, double tol) {
  if (x.is_infinite() && y.is_infinite()) return {0, false};
  if (x.is_infinite()) return {1, false};
  if (y.is_infinite()) return {-1, false};
  return decide_sign(x - y, tol);
}

}  // namespace funspace
