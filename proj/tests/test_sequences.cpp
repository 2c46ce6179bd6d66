#include <gtest/gtest.h>

#include <cmath>

#include "cesaro/sequences.hpp"

using namespace cesaro;

TEST(AlphaValues, LinearIsOneTwoThree) {
  const auto v = alpha_values(AlphaSequence::linear(), 3);
  EXPECT_EQ(v, (std::vector<double>{1, 2, 3}));
  EXPECT_FALSE(AlphaSequence::linear().first_term_above_one());
}

TEST(AlphaValues, RswbAlternatesSteps) {
  // alpha_{2k} = 3k, alpha_{2k+1} = 2 + alpha_{2k}, alpha_1 = 2
  const auto v = alpha_values(AlphaSequence::parse("rsw_b"), 5);
  EXPECT_EQ(v, (std::vector<double>{2, 3, 5, 6, 8}));
}

TEST(AlphaValues, LogBetaTwo) {
  const auto v = alpha_values(AlphaSequence::parse("log:beta=2"), 2);
  EXPECT_DOUBLE_EQ(v[0], 2 * std::log(2.0));
  EXPECT_DOUBLE_EQ(v[1], 2 * std::log(3.0));
}

TEST(AlphaValues, PowerAndSqrt) {
  const auto p = AlphaSequence::parse("power:beta=2");
  EXPECT_DOUBLE_EQ(p.value(7), 49.0);
  const auto s = AlphaSequence::parse("sqrt");
  EXPECT_DOUBLE_EQ(s.value(9), 3.0);
  EXPECT_FALSE(s.first_term_above_one());
}

TEST(AlphaValues, PartialSumMatchesDirectSum) {
  const auto seq = AlphaSequence::parse("psum:beta=0.5");
  double sum = 0;
  for (long m = 1; m <= 200; ++m) sum += 1.0 / std::sqrt(static_cast<double>(m));
  EXPECT_NEAR(seq.value(200), sum, 1e-12);
}

TEST(AlphaValues, TowerSwitchesToLogSpace) {
  const auto t = AlphaSequence::tower();
  EXPECT_DOUBLE_EQ(t.value(3), 27.0);
  const long last = t.max_float_index();
  EXPECT_NO_THROW((void)t.value(last));
  EXPECT_THROW((void)t.value(last + 1), RepresentationError);
  // log alpha_n = n log n stays available past overflow
  EXPECT_NEAR(t.log_value(1000), 1000 * std::log(1000.0), 1e-9);
}

TEST(AlphaValues, StrictlyIncreasingAcrossGenerators) {
  for (const char* g : {"linear", "sqrt", "log:beta=1", "power:beta=1.5", "psum:beta=0.3", "rsw_b", "s1_empty"}) {
    const auto v = alpha_values(AlphaSequence::parse(g), 2000);
    for (std::size_t i = 1; i < v.size(); ++i) ASSERT_LT(v[i - 1], v[i]) << g << " at n=" << i + 1;
  }
}

TEST(Grammar, RejectsMalformedSpecs) {
  EXPECT_THROW(AlphaSequence::parse("nonsense"), std::invalid_argument);
  EXPECT_THROW(AlphaSequence::parse("log"), std::invalid_argument);
  EXPECT_THROW(AlphaSequence::parse("log:beta=-1"), std::invalid_argument);
  EXPECT_THROW(AlphaSequence::parse("linear:beta=2"), std::invalid_argument);
  EXPECT_THROW(AlphaSequence::parse("table:[3,2]"), std::invalid_argument);
  EXPECT_THROW(AlphaSequence::parse("table:[1,2]:tail=wild"), std::invalid_argument);
}

TEST(Grammar, TableTails) {
  const auto arith = AlphaSequence::parse("table:[2,5]:tail=arith");
  EXPECT_DOUBLE_EQ(arith.value(4), 11.0);
  const auto geom = AlphaSequence::parse("table:[2,4]:tail=geom");
  EXPECT_DOUBLE_EQ(geom.value(4), 16.0);
  const auto none = AlphaSequence::parse("table:[2,4]:tail=none");
  EXPECT_THROW((void)none.value(3), RepresentationError);
}

TEST(Grammar, DescriptorRoundTrips) {
  for (const char* g : {"linear", "sqrt", "log:beta=2", "power:beta=0.5", "psum:beta=0.5", "tower", "rsw_b"}) {
    EXPECT_EQ(AlphaSequence::parse(AlphaSequence::parse(g).descriptor()).descriptor(),
              AlphaSequence::parse(g).descriptor());
  }
}

TEST(Seminorm, SingleTerm) {
  const WeightSystem w(AlphaSequence::linear());
  Vector<double> x(3);
  x << std::exp(1.0), 0, 0;
  EXPECT_NEAR(seminorm(w, 1, x), 1.0, 1e-15);
}

TEST(Seminorm, ZeroVector) {
  const WeightSystem w(AlphaSequence::parse("log:beta=2"));
  EXPECT_EQ(seminorm(w, 3, Vector<double>(Vector<double>::Zero(5))), 0.0);
}

TEST(Seminorm, MaxAttainedAtFirstCoordinate) {
  const WeightSystem w(AlphaSequence::linear());
  EXPECT_NEAR(seminorm(w, 2, Vector<double>(Vector<double>::Ones(3))), std::exp(-0.5), 1e-15);
}

TEST(Seminorm, LogFormSurvivesUnderflow) {
  const WeightSystem w(AlphaSequence::linear());
  Vector<double> x = Vector<double>::Zero(2000);
  x(1999) = 1.0;
  EXPECT_DOUBLE_EQ(log_seminorm(w, 1, x), -2000.0);
}

TEST(Nuclearity, Linear) { EXPECT_TRUE(nuclearity_check(AlphaSequence::linear(), 10000).holds()); }

TEST(Nuclearity, Sqrt) { EXPECT_TRUE(nuclearity_check(AlphaSequence::sqrt(), 10000).holds()); }

TEST(Nuclearity, LogBetaTwoTendsToHalf) {
  const Verdict v = nuclearity_check(AlphaSequence::log(2), 10000);
  ASSERT_TRUE(v.fails());
  ASSERT_TRUE(v.witness.has_value());
  // log n / (2 log(n+1)) near the end of the ladder
  const double oracle = std::log(1e4) / (2 * std::log1p(1e4));
  EXPECT_NEAR(*v.param("limit"), oracle, 0.02);
}

TEST(VAlpha, RswbGapsAreOne) {
  const VAlpha v = v_alpha(AlphaSequence::rsw_b(), 100);
  EXPECT_DOUBLE_EQ(v.infimum, 1.0);
  EXPECT_TRUE(v.verdict.holds());
}

TEST(VAlpha, SqrtGapsVanish) {
  const VAlpha v = v_alpha(AlphaSequence::sqrt(), 10000);
  EXPECT_TRUE(v.verdict.fails());
  EXPECT_NEAR(v.infimum, std::sqrt(10000.0) - std::sqrt(9999.0), 1e-12);
}

TEST(VAlpha, LinearGapsAreOne) {
  const VAlpha v = v_alpha(AlphaSequence::linear(), 100);
  EXPECT_DOUBLE_EQ(v.infimum, 1.0);
  EXPECT_TRUE(v.verdict.holds());
}

TEST(ShiftStability, TowerFails) {
  const Verdict v = shift_stability_check(AlphaSequence::tower(), 30);
  EXPECT_TRUE(v.fails());
  EXPECT_TRUE(v.witness.has_value());
}

TEST(ShiftStability, LogBetaOneHolds) { EXPECT_TRUE(shift_stability_check(AlphaSequence::log(1), 10000).holds()); }

TEST(ShiftStability, LinearRatioTendsToOne) {
  const Verdict v = shift_stability_check(AlphaSequence::linear(), 10000);
  ASSERT_TRUE(v.holds());
  // sup_n (n+1)/n = 2 at n = 1
  EXPECT_NEAR(*v.param("log_sup_ratio"), std::log(2.0), 1e-12);
}

TEST(SkConvergence, LogBetaTwoAboveThreshold) {
  EXPECT_TRUE(sk_convergence(AlphaSequence::log(2), 1, 3.5, 10000).holds());
}

TEST(SkConvergence, LogBetaTwoAtThresholdIsHarmonic) {
  // (n+1)^2 / n^3 ~ 1/n
  EXPECT_TRUE(sk_convergence(AlphaSequence::log(2), 1, 3.0, 10000).fails());
}

TEST(SkConvergence, LinearTermsUnbounded) {
  EXPECT_TRUE(sk_convergence(AlphaSequence::linear(), 1, 100.0, 10000).fails());
}

TEST(S0Estimate, LogBetaTwoNearThree) {
  const S0Interval s = s0_estimate(AlphaSequence::log(2), 1, 10000, 0.01);
  EXPECT_LE(s.lo, s.hi);
  EXPECT_NEAR(s.midpoint(), 3.0, 0.05);
}

TEST(S0Estimate, LargeKApproachesOne) {
  const auto seq = AlphaSequence::log(2);
  const double s4 = s0_estimate(seq, 4, 10000, 0.01).midpoint();
  const double s16 = s0_estimate(seq, 16, 10000, 0.01).midpoint();
  EXPECT_GT(s16, 1.0);
  EXPECT_LT(s16, s4);
  // 1 + beta / k
  EXPECT_NEAR(s16, 1.0 + 2.0 / 16, 0.05);
}

TEST(S0Estimate, LinearHasEmptyS1) {
  EXPECT_THROW(s0_estimate(AlphaSequence::linear(), 1, 10000, 0.01), EmptySkError);
}
