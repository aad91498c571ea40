#include <gtest/gtest.h>

#include <cmath>

#include "funspace/error.hpp"
#include "funspace/lorentz.hpp"
#include "oracles.hpp"

using namespace funspace;

namespace {

SampledFunction three_on_unit() {
  return SampledFunction(Box::interval(0, 2), {8}, {3, 3, 3, 3, 0, 0, 0, 0});
}

}  // namespace

TEST(Lorentz, BigBExamples) {
  const auto l2 = LorentzSpec::lebesgue(Param::exact(2), 1.0);
  for (double t : {0.01, 0.3, 1.0}) EXPECT_NEAR(big_B(l2, t).value, std::sqrt(t), 1e-13);
  const auto l21 = LorentzSpec::unweighted(Param::exact(2), Param::exact(1), 1.0);
  EXPECT_NEAR(big_B(l21, 1.0).value, 2.0, 1e-13);
  const LorentzParams bad(Param::exact(1), Param::exact(1),
                          PowerLogWeight(1.0, Param::exact(-1), Param::exact(0), 1.0), 1.0);
  for (double t : {0.1, 1.0}) EXPECT_TRUE(std::isinf(big_B(bad, t).value));
  try {
    LorentzSpec spec(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Divergent);
  }
  EXPECT_THROW(big_B(l2, 1.5), Error);
}

TEST(Lorentz, BigBAgainstBoost) {
  const PowerLogWeight w(1.5, Param::exact(1, 4), Param::exact(-3, 2), 1.0);
  const LorentzSpec spec(Param::exact(2), Param::exact(3), w, 1.0);
  for (double t : {1e-6, 1e-3, 0.2, 1.0}) {
    const double ref = oracle::big_B(0.5, 3.0, 1.5, 0.25, -1.5, t, 1.0);
    EXPECT_LT(oracle::rel_err(big_B(spec, t).value, ref), 1e-10);
  }
}

TEST(Lorentz, NormExamples) {
  const auto f = three_on_unit();
  EXPECT_NEAR(lorentz_quasinorm(LorentzSpec::lebesgue(Param::exact(2), 2.0), f).value, 3.0, 1e-13);
  EXPECT_NEAR(lorentz_quasinorm(LorentzSpec::unweighted(Param::exact(2), Param::exact(1), 2.0), f).value, 6.0, 1e-12);
  const auto wrong_domain = LorentzSpec::lebesgue(Param::exact(2), 1.0);
  try {
    lorentz_quasinorm(wrong_domain, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
}

TEST(Lorentz, LebesgueMatchesCellSum) {
  oracle::Rng rng(21);
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    const auto f = oracle::random_function(rng, 100);
    const auto spec = LorentzSpec::lebesgue(Param(p), 1.0);
    EXPECT_LT(oracle::rel_err(lorentz_quasinorm(spec, f).value, lp_norm(f, p)), 1e-12) << p;
  }
  const auto f = oracle::random_function(rng, 100);
  EXPECT_DOUBLE_EQ(lorentz_quasinorm(LorentzSpec::lebesgue(Param::infinity(), 1.0), f).value,
                   lp_norm(f, std::numeric_limits<double>::infinity()));
}

TEST(Lorentz, Delta2) {
  const auto l = LorentzSpec::unweighted(Param::exact(2), Param::exact(3), 1.0);
  const auto d = delta2_classify(l.params());
  EXPECT_TRUE(d.holds);
  EXPECT_LE(d.bound, std::sqrt(2.0) + 1e-12);
  const LorentzParams log_w(Param::exact(1), Param::exact(1),
                            PowerLogWeight(1.0, Param::exact(0), Param::exact(2), 1.0), 1.0);
  EXPECT_TRUE(delta2_classify(log_w).holds);
  EXPECT_TRUE(delta2_numeric(log_w).holds);
  const LorentzParams spikes(Param::exact(1), Param::exact(1), TabulatedWeight::default_spikes(), 1.0);
  const auto r = delta2_classify(spikes);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.method, Method::Empirical);
  EXPECT_FALSE(r.witness_t.empty());
  EXPECT_THROW(LorentzSpec{spikes}, Error);
}

TEST(Lorentz, QuasiConstants) {
  const auto c = estimate_quasi_constants(LorentzSpec::lebesgue(Param::exact(2), 1.0), 500, 1);
  EXPECT_DOUBLE_EQ(c.C, 1.0);
  EXPECT_DOUBLE_EQ(c.lambda, 1.0);
  EXPECT_DOUBLE_EQ(constants_from_C(2.0).lambda, 0.5);
  const auto h = estimate_quasi_constants(LorentzSpec::lebesgue(Param::exact(1, 2), 1.0), 10000, 1);
  EXPECT_GT(h.C, 1.0);
}

TEST(Lorentz, PowerTransform) {
  oracle::Rng rng(4);
  const auto f = oracle::random_function(rng, 64);
  const auto spec = LorentzSpec::unweighted(Param::exact(2), Param::exact(3), 1.0);
  EXPECT_LT(oracle::rel_err(power_transform_norm(spec, Param::exact(1), f).value, lorentz_quasinorm(spec, f).value),
            1e-14);
  const auto half = power_transformed_spec(spec, Param::exact(1, 2));
  EXPECT_DOUBLE_EQ(half.p().value(), 4.0);
  EXPECT_DOUBLE_EQ(half.q().value(), 6.0);
  EXPECT_LT(oracle::rel_err(power_transform_norm(spec, Param::exact(1, 2), f).value, lorentz_quasinorm(half, f).value),
            1e-9);
}

TEST(Lorentz, BConvexity) {
  const auto grid = SampledFunction::zeros(Box::interval(0, 1), {256});
  // single-function tuples
  oracle::Rng rng(8);
  std::vector<std::vector<SampledFunction>> singles;
  for (int i = 0; i < 5; ++i) singles.push_back({oracle::random_function(rng, 256)});
  const auto l1 = LorentzSpec::lebesgue(Param::exact(1, 2), 1.0);
  const auto r1 = b_convexity_test(l1, Param::exact(1), singles);
  for (double r : r1.max_ratio) EXPECT_NEAR(r, 1.0, 1e-12);

  // disjoint indicators in L_{1/2} with b = 1: ratio m^{2-1} grows
  std::vector<std::vector<SampledFunction>> tuples;
  for (std::size_t m : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
    std::vector<SampledFunction> tuple;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> v(256, 0.0);
      v[i * 4] = 1.0;
      tuple.push_back(grid.with_values(v));
    }
    tuples.push_back(tuple);
  }
  const auto grow = b_convexity_test(l1, Param::exact(1), tuples);
  EXPECT_TRUE(grow.violated);
  EXPECT_NEAR(grow.max_ratio.back(), 64.0, 1e-9);
  const auto ok = b_convexity_test(l1, Param::exact(1, 4), tuples);
  EXPECT_FALSE(ok.violated);
}

TEST(Lorentz, Minkowski) {
  const Box box({0, 0}, {1, 1});
  const auto sep = SampledFunction::from_centers(box, {16, 16}, [](std::span<const double> x) {
    return std::sin(3 * x[0]) * (1 + x[1]);
  });
  const auto m = minkowski_property_check(sep, 2.0);
  EXPECT_TRUE(m.holds);
  EXPECT_NEAR(m.lhs, m.rhs, 1e-12);
  oracle::Rng rng(2);
  std::vector<double> v(256);
  for (auto& x : v) x = oracle::uniform(rng, 0, 1);
  const SampledFunction pos(box, {16, 16}, v);
  EXPECT_NEAR(minkowski_property_check(pos, 1.0).gap, 0.0, 1e-12);
  EXPECT_TRUE(minkowski_property_check(pos, 2.0).holds);
  try {
    minkowski_property_check(pos, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotApplicable);
  }
}
