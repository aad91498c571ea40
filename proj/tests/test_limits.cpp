#include <gtest/gtest.h>

#include <cmath>

#include "funspace/error.hpp"
#include "funspace/limits.hpp"

using namespace funspace;

namespace {

std::vector<double> dyadic(int k0, int k1) {
  std::vector<double> d;
  for (int k = k0; k <= k1; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

}  // namespace

TEST(Limits, FitLine) {
  const auto fit = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  EXPECT_NEAR(fit.slope, 2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
  EXPECT_NEAR(fit.r2, 1.0, 1e-14);
}

TEST(Limits, Verdicts) {
  const auto d = dyadic(1, 30);
  std::vector<double> decay, grow, flat;
  for (double x : d) {
    decay.push_back(std::sqrt(x));
    grow.push_back(1.0 / x);
    flat.push_back(1.0);
  }
  EXPECT_EQ(assess_limit(d, decay).verdict, LimitVerdict::TendsToZero);
  EXPECT_NEAR(assess_limit(d, decay).slope, 0.5, 1e-12);
  EXPECT_EQ(assess_limit(d, grow).verdict, LimitVerdict::Diverges);
  EXPECT_EQ(assess_limit(d, flat).verdict, LimitVerdict::Inconclusive);
  std::vector<double> bad = d;
  std::swap(bad[0], bad[1]);
  try {
    assess_limit(bad, decay);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSequence);
  }
}

TEST(Limits, PowerLogFitRecoversExponents) {
  const auto d = dyadic(4, 40);
  auto L = [](double t) { return 1.0 + std::log(1.0 / t); };
  std::vector<double> v;
  for (double x : d) v.push_back(3.0 * std::pow(x, 0.7) * std::pow(L(x), -1.5));
  const auto fit = fit_power_log(d, v, L);
  EXPECT_NEAR(fit.c1, 0.7, 1e-9);
  EXPECT_NEAR(fit.c2, -1.5, 1e-8);
  EXPECT_NEAR(std::exp(fit.c0), 3.0, 1e-8);
}
