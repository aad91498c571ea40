#include <gtest/gtest.h>

#include <cmath>

#include "funspace/compact.hpp"
#include "funspace/error.hpp"

using namespace funspace;

namespace {

SampledFunction chi01(double a, double b, std::size_t cells) {
  return SampledFunction::from_centers(Box::interval(a, b), {cells},
                                       [](std::span<const double> x) { return (x[0] >= 0 && x[0] < 1) ? 1.0 : 0.0; });
}

std::vector<double> dyadic(int k0, int k1) {
  std::vector<double> d;
  for (int k = k0; k <= k1; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

BesovSpec besov(Param s, Param p, Param q) { return BesovSpec(s, p, q, 1); }

LorentzSpec target(Param r, Param u, Param a = Param::exact(0), Param b = Param::exact(0)) {
  return LorentzSpec(r, u, PowerLogWeight(1.0, a, b, 1.0), 1.0);
}

}  // namespace

TEST(Compact, UacIndicator) {
  const auto spec = LorentzSpec::lebesgue(Param::exact(2), 2.0);
  VerdictThresholds th;
  th.zero_value = 0.05;  // finest probe 2^{-11} leaves a tail of about 0.022
  const auto r = uac_check({chi01(0, 2, 1 << 12)}, spec, dyadic(1, 11), th);
  EXPECT_EQ(r.verdict, UacVerdict::UAC);
  EXPECT_NEAR(r.decay_exponent, 0.5, 0.05);
  for (std::size_t i = 0; i < r.delta_probes.size(); ++i)
    EXPECT_NEAR(r.sup_tail_norms[i], std::sqrt(r.delta_probes[i]), 1e-12);
  EXPECT_EQ(uac_check({}, spec, dyadic(1, 5)).verdict, UacVerdict::UAC);
  try {
    uac_check({chi01(0, 2, 64)}, spec, dyadic(1, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResolutionError);
  }
}

TEST(Compact, UacSpikes) {
  FamilySpec fs;
  fs.params = {{"k_min", 1}, {"k_max", 1024}, {"p", 2}};
  const auto fam = make_family(fs, Box::interval(0, 2), {2048});
  const auto r = uac_check(fam.members, LorentzSpec::lebesgue(Param::exact(2), 2.0), dyadic(1, 10));
  EXPECT_EQ(r.verdict, UacVerdict::NotUAC);
  ASSERT_TRUE(r.witness.has_value());
  for (double v : r.sup_tail_norms) EXPECT_GE(v, 0.99);
}

TEST(Compact, AcSingle) {
  const auto f = chi01(0, 1, 64);
  const auto spec = LorentzSpec::lebesgue(Param::exact(2), 1.0);
  const double center[] = {0.5};
  const double radii[] = {0.4, 0.2, 0.1, 0.05, 0.02, 0.005};
  const auto seq = MeasurableSetSeq::shrinking_balls(f, center, radii);
  EXPECT_EQ(ac_single_check(f, spec, seq).verdict, AcVerdict::AC);
  EXPECT_EQ(ac_single_check(SampledFunction::zeros(f.box(), f.cells()), spec, seq).verdict, AcVerdict::AC);
  const MeasurableSetSeq constant(64, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  try {
    ac_single_check(f, spec, constant);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSequence);
  }
}

TEST(Compact, TailAndEquicontinuity) {
  const auto spec = LorentzSpec::lebesgue(Param::exact(1), 3.0);
  const auto f = chi01(-1, 2, 96);
  const auto in = tail_condition_check({f}, spec, Box::interval(-0.5, 1.5), 0.1);
  EXPECT_TRUE(in.pass);
  EXPECT_EQ(in.value, 0.0);

  FamilySpec bumps;
  bumps.kind = FamilyKind::TranslatedBump;
  bumps.params = {{"count", 3}, {"width", 0.5}, {"spacing", 1}, {"start", -0.5}};
  const auto fam = make_family(bumps, Box::interval(-1, 2), {96});
  EXPECT_FALSE(tail_condition_check(fam.members, spec, Box::interval(-1, 0), 0.01).pass);

  const auto fail = equicontinuity_check({f}, spec, 0.25, 0.1);
  EXPECT_FALSE(fail.pass);
  EXPECT_FALSE(fail.witness_shift.empty());
  const auto zero = SampledFunction::zeros(f.box(), f.cells());
  EXPECT_TRUE(equicontinuity_check({zero}, spec, 0.25, 1e-9).pass);
  FamilySpec hat;
  hat.kind = FamilyKind::TensorHat;
  hat.params = {{"count", 1}, {"width", 1}};
  const auto hats = make_family(hat, Box::interval(-1, 2), {3000});
  EXPECT_TRUE(equicontinuity_check(hats.members, spec, 0.005, 0.05).pass);
  EXPECT_THROW(equicontinuity_check({f}, spec, f.cell_measure() / 2, 0.1), Error);
}

TEST(Compact, Covering) {
  const auto f = chi01(0, 1, 32);
  const auto spec = LorentzSpec::lebesgue(Param::exact(2), 1.0);
  EXPECT_EQ(covering_estimate(std::vector<SampledFunction>(5, f), spec, 0.1).net_size, 1u);
  FamilySpec fs;
  fs.params = {{"k_min", 16}, {"k_max", 31}, {"p", 2}, {"layout", 1}};
  const auto fam = make_family(fs, Box::interval(0, 1), {1 << 12});
  EXPECT_EQ(covering_estimate(fam.members, spec, 0.5).net_size, fam.members.size());
}

TEST(Compact, EnvelopeAndCases) {
  const auto b1 = besov(Param::exact(1, 2), Param::exact(1), Param::exact(2));
  EXPECT_EQ(embedding_case(b1), EmbeddingCase::I);
  const auto e1 = envelope(b1);
  EXPECT_EQ(e1.power.value(), -0.5);
  EXPECT_NEAR(e1(0.25), 2.0, 1e-14);
  const auto b2 = besov(Param::exact(1, 2), Param::exact(2), Param::exact(2));
  EXPECT_EQ(embedding_case(b2), EmbeddingCase::II);
  EXPECT_DOUBLE_EQ(envelope(b2).log_power.value(), 0.5);
  const auto b3 = besov(Param::exact(1, 2), Param::exact(2), Param::exact(1));
  EXPECT_EQ(embedding_case(b3), EmbeddingCase::III);
  EXPECT_EQ(envelope(b3)(1e-9), 1.0);
}

TEST(Compact, ClassifierExamples) {
  const auto src = besov(Param::exact(1, 2), Param::exact(1), Param::exact(2));
  const auto a = classify_embedding(src, target(Param::exact(1), Param::infinity()));
  EXPECT_EQ(a.final_verdict, EmbeddingOutcome::Compact);
  EXPECT_DOUBLE_EQ(a.alpha.value(), 0.5);

  const auto b = classify_embedding(src, target(Param::exact(2), Param::exact(2)));
  EXPECT_EQ(b.symbolic_verdict, EmbeddingOutcome::CriterionFails);
  EXPECT_NE(b.final_verdict, EmbeddingOutcome::Compact);

  const auto c = classify_embedding(src, target(Param::exact(2), Param::exact(2), Param::exact(0), Param::exact(-1)));
  EXPECT_EQ(c.symbolic_verdict, EmbeddingOutcome::Compact);
  EXPECT_NE(c.final_verdict, EmbeddingOutcome::CriterionFails);

  // beta u = -1 exactly: the criterion fails, but w -> 0 at the critical r
  const auto edge = classify_embedding(src, target(Param::exact(2), Param::exact(2), Param::exact(0), Param::exact(-1, 2)));
  EXPECT_EQ(edge.symbolic_verdict, EmbeddingOutcome::RefinementCompact);
  EXPECT_TRUE(edge.refinement_applicable);
}

TEST(Compact, Refinement) {
  // 1/r = 1/p - s/n, q <= u, w -> 0 through a log factor
  const auto src = besov(Param::exact(1, 2), Param::exact(1), Param::exact(1));
  const auto v = classify_embedding(src, target(Param::exact(2), Param::exact(2), Param::exact(0), Param::exact(-1, 4)));
  EXPECT_TRUE(v.refinement_applicable);
  EXPECT_EQ(v.final_verdict, EmbeddingOutcome::RefinementCompact);
  const auto no = classify_embedding(src, target(Param::exact(2), Param::exact(2)));
  EXPECT_FALSE(no.refinement_applicable);
}

TEST(Compact, EnvelopeEmpiricalCaseIII) {
  const auto src = besov(Param::exact(7, 8), Param::exact(4), Param::exact(2));
  ASSERT_EQ(embedding_case(src), EmbeddingCase::III);
  std::vector<double> widths, t;
  for (int j = 8; j <= 32; ++j) widths.push_back(std::pow(2.0, -j / 4.0));
  for (int i = 0; i <= 12; ++i) t.push_back(std::pow(2.0, -4 - i / 2.0));
  const auto fit = envelope_empirical(src, Box::interval(-2, 2), {16384}, widths, t);
  EXPECT_NEAR(fit.slope, 0.0, 0.05);
  EXPECT_THROW(envelope_empirical(src, Box::interval(-2, 2), {16384}, widths, {0.01}), Error);
}
