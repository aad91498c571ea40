#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "funspace/error.hpp"
#include "funspace/rearrange.hpp"
#include "oracles.hpp"

using namespace funspace;

TEST(Rearrange, IndicatorProfile) {
  std::vector<double> v(8, 0.0);
  v[2] = v[5] = v[6] = -2.5;
  const SampledFunction f(Box::interval(0, 2), {8}, v);
  const auto prof = rearrangement(f);
  ASSERT_EQ(prof.segment_count(), 2u);
  EXPECT_DOUBLE_EQ(prof.breakpoints()[0], 0.75);
  EXPECT_EQ(prof.levels()[0], 2.5);
  EXPECT_EQ(prof.levels()[1], 0.0);
  EXPECT_EQ(prof(0.74), 2.5);
  EXPECT_EQ(prof(0.75), 0.0);
  EXPECT_EQ(prof(5.0), 0.0);
  EXPECT_THROW(prof(-1.0), Error);
}

TEST(Rearrange, Equimeasurable) {
  oracle::Rng rng(3);
  const auto f = oracle::random_function(rng, 128);
  auto v = f.values();
  std::shuffle(v.begin(), v.end(), rng);
  EXPECT_EQ(rearrangement(f), rearrangement(f.with_values(v)));
}

TEST(Rearrange, MatchesCountingOracle) {
  oracle::Rng rng(11);
  const auto f = oracle::random_function(rng, 128);
  const auto prof = rearrangement(f);
  const oracle::CountingRearrangement brute(f);
  for (int i = 0; i < 1000; ++i) {
    const double t = oracle::uniform(rng, 0, 1.0);
    EXPECT_EQ(prof(t), brute(t)) << t;
  }
}

TEST(Rearrange, Distribution) {
  std::vector<double> v(8, 0.0);
  for (int i = 0; i < 4; ++i) v[i] = 3.0;
  const SampledFunction f(Box::interval(0, 2), {8}, v);
  EXPECT_DOUBLE_EQ(distribution(f, 1.0), 1.0);
  EXPECT_EQ(distribution(f, 3.0), 0.0);
  try {
    distribution(f, -0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidThreshold);
  }
  oracle::Rng rng(5);
  const auto g = oracle::random_function(rng, 64);
  const auto prof = rearrangement(g);
  for (double lambda : {0.0, 0.5, 1.0, 2.0, 3.9})
    EXPECT_DOUBLE_EQ(distribution(g, lambda), prof.distribution(lambda));
}

TEST(Rearrange, Maximal) {
  const DecreasingProfile c({3.0}, {2.0}, 3.0);
  for (double t : {0.1, 1.0, 2.9}) EXPECT_DOUBLE_EQ(maximal(c, t), 2.0);
  const DecreasingProfile step({1.0, 3.0}, {1.0, 0.0}, 3.0);
  EXPECT_DOUBLE_EQ(maximal(step, 2.0), 0.5);
  EXPECT_THROW(maximal(step, 0.0), Error);
  EXPECT_THROW(maximal(step, 3.0), Error);

  oracle::Rng rng(9);
  const auto prof = rearrangement(oracle::random_function(rng, 50));
  for (int i = 0; i < 100; ++i) {
    const double t = oracle::uniform(rng, 1e-3, 0.999);
    // adaptive quadrature segment by segment, so no panel straddles a jump
    double ref = 0.0, lo = 0.0;
    for (double hi : prof.breakpoints()) {
      const double b = std::min(hi, t);
      if (b > lo)
        ref += boost::math::quadrature::gauss_kronrod<double, 15>::integrate([&](double s) { return prof(s); }, lo, b, 10,
                                                                              1e-14);
      lo = hi;
      if (hi >= t) break;
    }
    ref /= t;
    EXPECT_NEAR(maximal(prof, t), ref, 1e-12 * std::max(1.0, ref));
  }
}

TEST(Rearrange, Subadditivity) {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_function(rng, 64);
    const auto g = oracle::random_function(rng, 64);
    const auto pf = rearrangement(f), pg = rearrangement(g), ps = rearrangement(f + g);
    for (int i = 0; i < 20; ++i) {
      const double t = oracle::uniform(rng, 0, 1);
      EXPECT_LE(ps(t), pf(t / 2) + pg(t / 2));
    }
  }
}

TEST(Rearrange, ProfileCsv) {
  const DecreasingProfile p({0.5, 1.0}, {2.0, 0.0}, 1.0);
  std::ostringstream os;
  write_profile_csv(os, p);
  EXPECT_NE(os.str().find("0,2"), std::string::npos);
  EXPECT_NE(os.str().find("1,0"), std::string::npos);
}
