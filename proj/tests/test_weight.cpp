#include <gtest/gtest.h>

#include <cmath>

#include "funspace/param.hpp"
#include "funspace/weight.hpp"
#include "oracles.hpp"

using namespace funspace;

TEST(Param, ParseAndExactness) {
  EXPECT_TRUE(Param::parse("1/2").is_exact());
  EXPECT_DOUBLE_EQ(Param::parse("1/2").value(), 0.5);
  EXPECT_TRUE(Param::parse("0.3").is_exact());
  EXPECT_EQ(*Param::parse("0.3").rational(), Rational(3, 10));
  EXPECT_TRUE(Param::parse("inf").is_infinite());
  EXPECT_TRUE(Param::parse("inf").reciprocal().is_exact());
  EXPECT_EQ(Param::parse("inf").reciprocal().value(), 0.0);
  EXPECT_FALSE(Param::floating(0.1).is_exact());
  const auto alpha = Param::parse("1/2") + Param::parse("-1/2");
  EXPECT_EQ(decide_sign(alpha).sign, 0);
  EXPECT_FALSE(decide_sign(alpha).flagged);
  EXPECT_TRUE(decide_sign(Param::floating(1e-14)).flagged);
}

TEST(Weight, PowerLogValues) {
  const PowerLogWeight w(2.0, Param::exact(1, 2), Param::exact(-1), 1.0);
  EXPECT_DOUBLE_EQ(w(0.25), 2.0 * 0.5 / (1.0 + std::log(4.0)));
  EXPECT_DOUBLE_EQ(w.log_factor(1.0), 1.0);
  const auto w2 = w.powered(Param::exact(2));
  EXPECT_NEAR(w2(0.25), w(0.25) * w(0.25), 1e-15);
}

TEST(Weight, IntegralsAgainstBoost) {
  // int_0^t tau^{gamma-1} L^beta, mixing closed-form and quadrature branches
  struct Case { double gamma; double beta; double t1; double t2; };
  for (const auto& c : {Case{0.5, 0, 0, 0.5}, Case{1, 2, 0, 1}, Case{0.3, -1.5, 0, 0.25}, Case{2, 0.5, 0.1, 0.7},
                        Case{0, -2, 0, 0.5}, Case{-0.5, 1, 0.01, 1}}) {
    const auto got = detail::power_log_integral(c.gamma, c.gamma > 0 ? 1 : (c.gamma < 0 ? -1 : 0), c.beta, c.t1, c.t2, 1.0);
    const double ref = oracle::power_log_integral(c.gamma, c.beta, c.t1, c.t2, 1.0);
    EXPECT_LT(oracle::rel_err(got.value, ref), 1e-10) << c.gamma << " " << c.beta;
  }
  const auto div = detail::power_log_integral(0.0, 0, -0.5, 0.0, 0.5, 1.0);
  EXPECT_TRUE(std::isinf(div.value));
}

TEST(Weight, SupClosedForm) {
  // tau^{1/2} (1 + log(1/tau)): interior maximum at tau = e^{-1}
  const double s = detail::power_log_sup(0.5, 1, 1.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(s, std::exp(-0.5) * 2.0, 1e-12);
  EXPECT_TRUE(std::isinf(detail::power_log_sup(0.0, 0, 1.0, 0.0, 1.0, 1.0)));
  EXPECT_DOUBLE_EQ(detail::power_log_sup(0.0, 0, -1.0, 0.0, 1.0, 1.0), 1.0);
}

TEST(Weight, OriginFinite) {
  const auto unit = PowerLogWeight::unit(1.0);
  EXPECT_TRUE(unit.origin_finite(Param::exact(1), Param::exact(1)));
  const PowerLogWeight inv(1.0, Param::exact(-1), Param::exact(0), 1.0);
  EXPECT_FALSE(inv.origin_finite(Param::exact(1), Param::exact(1)));
  const PowerLogWeight borderline(1.0, Param::exact(-1), Param::exact(-2), 1.0);
  EXPECT_TRUE(borderline.origin_finite(Param::exact(1), Param::exact(1)));
  EXPECT_FALSE(borderline.origin_finite(Param::exact(1), Param::exact(1, 2)));
}

TEST(Weight, Tabulated) {
  const TabulatedWeight w({0.25, 0.5}, {2.0, 1.0}, 1.0);
  EXPECT_EQ(w(0.25), 2.0);
  EXPECT_EQ(w(0.75), 1.0);
  const auto e = w.integral(Param::exact(1), Param::exact(1), 0.0, 1.0);
  EXPECT_NEAR(e.value, 2.0 * 0.5 + 1.0 * 0.5, 1e-14);
  const auto spikes = TabulatedWeight::default_spikes();
  EXPECT_GT(spikes(0.5 * (1 + 0.25)), 1.0);
}
