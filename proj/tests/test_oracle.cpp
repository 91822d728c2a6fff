#include <cmath>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "steinbounds/oracle.hpp"
#include "steinbounds/special.hpp"

namespace sb = steinbounds;

TEST(Oracle, ShiftedNormals) {
  for (double m : {0.1, 1.0, 3.0}) {
    const auto o = sb::oracle(sb::Distribution::normal(0, 1), sb::Distribution::normal(m, 1));
    EXPECT_TRUE(o.converged);
    EXPECT_NEAR(o.value_cdf, m, 1e-8);
    EXPECT_NEAR(o.value_quantile, m, 1e-7);
  }
}

TEST(Oracle, SkewNormal) {
  const auto o = sb::oracle(sb::Distribution::normal(0, 1), sb::Distribution::skew_normal(0, 1, 1));
  EXPECT_NEAR(o.value_cdf, sb::special::kSqrt2OverPi / std::sqrt(2.0), 1e-8);
  EXPECT_LE(o.agreement, 1e-5);
}

TEST(Oracle, Exponentials) {
  EXPECT_NEAR(sb::oracle_cdf(sb::Distribution::exponential(1), sb::Distribution::exponential(2)).value, 0.5, 1e-9);
}

TEST(Oracle, PoissonPosteriorsByIndependentQuadrature) {
  const boost::math::gamma_distribution<> a(21, 0.1), b(21, 1.0 / 11.0);
  const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return std::abs(boost::math::cdf(a, x) - boost::math::cdf(b, x)); }, 0.0, 10.0, 25, 1e-13);
  const auto o = sb::oracle(sb::Distribution::gamma(21, 0.1), sb::Distribution::gamma(21, 1.0 / 11.0));
  EXPECT_NEAR(o.value_cdf, ref, 1e-9);
  EXPECT_NEAR(o.value_quantile, ref, 1e-6);
}

TEST(Oracle, GaussianScaleClosedForm) {
  // d_W(N(0, s1^2), N(0, s2^2)) = sqrt(2/pi) |s1 - s2|.
  const auto o = sb::oracle(sb::Distribution::normal(0, 2), sb::Distribution::normal(0, 1));
  EXPECT_NEAR(o.value_cdf, sb::special::kSqrt2OverPi, 1e-8);
  EXPECT_LE(o.value_cdf, sb::special::kSqrt2OverPi * 3);
}

TEST(Oracle, MetricAxioms) {
  const auto a = sb::Distribution::normal(0, 1);
  const auto b = sb::Distribution::gamma(2, 1);
  const auto c = sb::Distribution::beta(2, 5);
  EXPECT_NEAR(sb::oracle_cdf(a, a).value, 0.0, 1e-12);
  EXPECT_NEAR(sb::oracle_cdf(a, b).value, sb::oracle_cdf(b, a).value, 1e-10);
  EXPECT_LE(sb::oracle_cdf(a, c).value, sb::oracle_cdf(a, b).value + sb::oracle_cdf(b, c).value + 1e-9);
}

TEST(Oracle, ManyCrossings) {
  // Two crossings of the cdfs.
  const auto p1 = sb::Distribution::normal(0, 1);
  const auto p2 = sb::Distribution::skew_normal(0.2, 0.8, -1.5);
  const auto o = sb::oracle(p1, p2);
  EXPECT_TRUE(o.converged);
  EXPECT_LE(o.agreement, 1e-6);
}
