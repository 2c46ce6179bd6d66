#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cesaro/dynamics.hpp"

using namespace cesaro;

namespace {

Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

CoordinateVector<Rational> unit(Index j, Index N) {
  Vector<Rational> v = Vector<Rational>::Zero(N);
  v(j - 1) = 1;
  return CoordinateVector<Rational>(v);
}

CoordinateVector<double> random_double(std::mt19937_64& rng, Index N) {
  std::uniform_real_distribution<double> d(-1, 1);
  Vector<double> v(N);
  for (auto& e : v) e = d(rng);
  return CoordinateVector<double>(v);
}

CoordinateVector<Rational> random_rational(std::mt19937_64& rng, Index N) {
  std::uniform_int_distribution<int> p(-20, 20), d(1, 20);
  Vector<Rational> v(N);
  for (auto& e : v) e = q(p(rng), d(rng));
  return CoordinateVector<Rational>(v);
}

}  // namespace

TEST(PowerIterate, OnesFixed) {
  const auto t = power_iterate(CoordinateVector<Rational>(Vector<Rational>::Ones(8)), 6);
  for (const auto& [m, y] : t.iterates) EXPECT_EQ(y.values, (Vector<Rational>::Ones(8))) << m;
  EXPECT_EQ(t.limit, q(1));
}

TEST(PowerIterate, SecondCoordinateOfCSquaredE1) {
  const auto t = power_iterate(unit(1, 4), 2);
  EXPECT_EQ(t.iterates[1].second.values(1), q(3, 4));
  EXPECT_EQ(t.iterates[0].second.values(1), q(1, 2));
}

TEST(PowerIterate, ValidLengthPreserved) {
  CoordinateVector<Rational> x(Vector<Rational>::Ones(10), 7);
  for (const auto& [m, y] : power_iterate(x, 5).iterates) EXPECT_EQ(y.valid_len, 7);
}

TEST(PowerIterate, ZeroFirstCoordinateDecays) {
  std::mt19937_64 rng(5);
  auto x = random_double(rng, 20);
  x.values(0) = 0;
  const auto a = power_apply(x, 20).values.cwiseAbs().maxCoeff();
  const auto b = power_apply(x, 200).values.cwiseAbs().maxCoeff();
  EXPECT_LT(b, a);
  EXPECT_LT(b, 1e-3);
}

TEST(PowerIterate, RowSumsOfPowersAreOne) {
  const Index N = 30;
  const Matrix<Rational> C = cesaro_matrix<Rational>(N).entries;
  Matrix<Rational> P = C;
  for (int m = 1; m <= 20; ++m) {
    for (Index n = 0; n < N; ++n) ASSERT_EQ(P.row(n).sum(), q(1)) << "m=" << m << " n=" << n + 1;
    P = C * P;
  }
}

TEST(Kernel, FirstPowerMatchesRunningMeans) {
  std::mt19937_64 rng(1);
  const auto x = random_double(rng, 30);
  const Vector<double> want = cesaro_apply(x).values;
  QuadratureSpec numeric;
  numeric.analytic_m1 = false;
  EXPECT_LE((iterate_via_kernel(x, 1).values - want).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((iterate_via_kernel(x, 1, numeric).values - want).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Kernel, BetaIntegralGivesOneOverN) {
  QuadratureSpec numeric;
  numeric.analytic_m1 = false;
  const auto K = kernel_matrix(1, 25, numeric);
  for (Index n = 0; n < 25; ++n)
    for (Index k = 0; k <= n; ++k) EXPECT_NEAR(K(n, k), 1.0 / static_cast<double>(n + 1), 1e-12);
}

TEST(Kernel, ExactEntriesOfCSquared) {
  // C^2 rows computed by hand: (1), (3/4, 1/4), (11/18, 5/18, 1/9)
  const auto K = kernel_matrix(2, 3);
  EXPECT_NEAR(K(0, 0), 1.0, 1e-13);
  EXPECT_NEAR(K(1, 0), 0.75, 1e-13);
  EXPECT_NEAR(K(1, 1), 0.25, 1e-13);
  EXPECT_NEAR(K(2, 0), 11.0 / 18, 1e-13);
  EXPECT_NEAR(K(2, 1), 5.0 / 18, 1e-13);
  EXPECT_NEAR(K(2, 2), 1.0 / 9, 1e-13);
}

TEST(Kernel, MatchesPowerIterateOnRandomVectors) {
  std::mt19937_64 rng(20240917);
  for (int r = 0; r < 20; ++r) {
    const auto x = random_double(rng, 30);
    for (int m = 1; m <= 5; ++m)
      EXPECT_LE((iterate_via_kernel(x, m).values - power_apply(x, m).values).cwiseAbs().maxCoeff(), 1e-8)
          << "r=" << r << " m=" << m;
  }
}

TEST(Kernel, OnesFixedForEveryPower) {
  const CoordinateVector<double> ones(Vector<double>::Ones(30));
  for (int m = 1; m <= 6; ++m)
    EXPECT_LE((iterate_via_kernel(ones, m).values.array() - 1.0).abs().maxCoeff(), 1e-10) << m;
}

TEST(Kernel, RejectsBadPower) { EXPECT_THROW(kernel_matrix(0, 3), std::invalid_argument); }

TEST(GmSup, FirstTwo) {
  const auto a1 = gm_sup(1);
  EXPECT_DOUBLE_EQ(a1.closed_form, 1.0);
  EXPECT_NEAR(a1.numeric, 1.0, 1e-10);
  EXPECT_NEAR(a1.argmax_t, 1.0, 1e-9);
  // d/dt (t log(1/t)) = log(1/t) - 1 vanishes at t = 1/e
  const auto a2 = gm_sup(2);
  EXPECT_NEAR(a2.closed_form, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(a2.numeric, std::exp(-1.0), 1e-10);
  EXPECT_NEAR(a2.argmax_t, std::exp(-1.0), 1e-6);
}

TEST(GmSup, ClosedFormAgreesAndDecreases) {
  double prev = INFINITY;
  for (int m = 1; m <= 20; ++m) {
    const auto a = gm_sup(m);
    EXPECT_NEAR(a.closed_form, a.numeric, 1e-10) << m;
    const double oracle = std::pow((m - 1) / std::exp(1.0), m - 1) / std::tgamma(m);
    EXPECT_NEAR(a.closed_form, oracle, 1e-12 * std::max(1.0, oracle)) << m;
    EXPECT_LE(a.closed_form, prev);
    prev = a.closed_form;
  }
  EXPECT_LT(gm_sup(10).closed_form, gm_sup(5).closed_form);
  EXPECT_LT(gm_sup(5).closed_form, gm_sup(2).closed_form);
  EXPECT_LT(gm_sup(200).closed_form, 0.03);
}

TEST(CesaroMeans, OnesFixed) {
  const auto t = cesaro_means(CoordinateVector<Rational>(Vector<Rational>::Ones(5)), 6);
  for (const auto& y : t.means) EXPECT_EQ(y.values, (Vector<Rational>::Ones(5)));
}

TEST(CesaroMeans, SecondMeanOfE1) {
  const auto t = cesaro_means(unit(1, 4), 2);
  EXPECT_EQ(t.means[1].values(1), q(5, 8));
}

TEST(CesaroMeans, DistanceTrendsDown) {
  const WeightSystem w(AlphaSequence::linear());
  std::mt19937_64 rng(3);
  const auto t = cesaro_means(random_double(rng, 30), 256, &w, 2);
  for (int k = 0; k < 2; ++k) {
    EXPECT_LT(t.distances[255][k], t.distances[15][k]);
    EXPECT_LT(t.distances[63][k], t.distances[3][k]);
  }
}

TEST(PowerBound, OnesGivesEquality) {
  const WeightSystem w(AlphaSequence::linear());
  const CoordinateVector<Rational> ones(Vector<Rational>::Ones(10));
  const auto t = power_iterate(ones, 3, &w, 3);
  for (const auto& row : t.seminorms)
    for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(row[k], t.seminorms[0][k]);
  EXPECT_TRUE(power_bound_check(w, ones, 5, 10).holds());
}

TEST(PowerBound, RandomRationalVectors) {
  const WeightSystem w(AlphaSequence::linear());
  std::mt19937_64 rng(20240917);
  for (int r = 0; r < 100; ++r) ASSERT_TRUE(power_bound_check(w, random_rational(rng, 20), 5, 50).holds()) << r;
}

TEST(PowerBound, FirstUnitVectorKeepsSupAtFirstCoordinate) {
  // (C e_1)_1 = 1, so p_1 is unchanged; e_2 loses half its weight at once
  const WeightSystem w(AlphaSequence::linear());
  const auto t1 = power_iterate(unit(1, 10), 1, &w, 1);
  EXPECT_DOUBLE_EQ(t1.seminorms[1][0], t1.seminorms[0][0]);
  EXPECT_NEAR(t1.seminorms[0][0], std::exp(-1.0), 1e-15);
  const auto t2 = power_iterate(unit(2, 10), 1, &w, 1);
  EXPECT_NEAR(t2.seminorms[1][0], std::exp(-2.0) / 2, 1e-15);
  EXPECT_LT(t2.seminorms[1][0], t2.seminorms[0][0]);
}

TEST(PowerBound, FloatOnesRatioStaysAtZero) {
  const WeightSystem w(AlphaSequence::linear());
  const auto v = power_bound_check(w, CoordinateVector<double>(Vector<double>::Ones(5)), 2, 3);
  EXPECT_TRUE(v.holds());
  EXPECT_LE(*v.param("max_log_ratio"), 1e-12);
}

TEST(IterateLimit, RandomVectorsReachFirstCoordinate) {
  std::mt19937_64 rng(7);
  for (int r = 0; r < 5; ++r) {
    const auto res = iterate_limit_check(random_double(rng, 30), 30);
    ASSERT_TRUE(res.verdict.holds()) << r;
    for (std::size_t n = 0; n < res.first_m.size(); ++n) {
      EXPECT_GE(res.first_m[n], 0);
      EXPECT_LE(res.first_m[n], m_cap(static_cast<Index>(n) + 1));
    }
  }
}

TEST(Ergodic, OnesIsKernelVector) {
  const Vector<Rational> ones = Vector<Rational>::Ones(10);
  const Vector<Rational> r = ones - cesaro_apply(CoordinateVector<Rational>(ones)).values;
  EXPECT_EQ(r, (Vector<Rational>::Zero(10)));
  EXPECT_TRUE(ergodic_decomposition_check(AlphaSequence::linear(), CoordinateVector<Rational>(ones), 10).holds());
}

TEST(Ergodic, FirstUnitVector) {
  const auto e1 = unit(1, 10);
  const Vector<Rational> r = e1.values - cesaro_apply(e1).values;
  EXPECT_EQ(r(0), q(0));
  for (Index n = 1; n < 10; ++n) EXPECT_EQ(r(n), q(-1, n + 1));
  EXPECT_TRUE(ergodic_decomposition_check(AlphaSequence::linear(), e1, 10).holds());
}

TEST(Ergodic, RandomRationalVectors) {
  std::mt19937_64 rng(9);
  for (int r = 0; r < 10; ++r)
    EXPECT_TRUE(ergodic_decomposition_check(AlphaSequence::log(2), random_rational(rng, 15), 15).holds());
}

TEST(Ergodic, ABInverseAtFifty) {
  EXPECT_EQ(a_matrix<Rational>(50).entries * b_matrix<Rational>(50).entries, (Matrix<Rational>::Identity(50, 50)));
}

TEST(MeanErgodic, ProxyHoldsOnSamples) {
  const WeightSystem w(AlphaSequence::linear());
  std::mt19937_64 rng(13);
  std::vector<CoordinateVector<double>> samples;
  for (int r = 0; r < 10; ++r) samples.push_back(random_double(rng, 30));
  EXPECT_TRUE(mean_ergodic_proxy(w, 2, samples, 512).holds());
}

TEST(TraceCsv, Header) {
  const WeightSystem w(AlphaSequence::linear());
  std::ostringstream os;
  write_trace_csv(os, power_iterate(unit(1, 2), 1, &w, 2));
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "m,n,value,p_1,p_2");
}
