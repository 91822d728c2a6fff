#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "steinbounds/error.hpp"
#include "steinbounds/oracle.hpp"
#include "steinbounds/tilt.hpp"

namespace sb = steinbounds;

TEST(Tilt, GammaClosedForm) {
  for (auto [k, lam, mu2] : {std::tuple{2.0, 1.0, 3.0}, {3.0, 0.5, 1.0}, {1.5, 2.0, 5.0}}) {
    const auto t = sb::tilt_distribution(sb::Distribution::gamma(k, lam), mu2);
    EXPECT_NEAR(t.spec.lambda1, 1 / lam - k / mu2, 1e-8);
    EXPECT_NEAR(t.tilted.mean(), mu2, 1e-7);
    const auto d = sb::tilt_distance_and_kl(t.spec);
    EXPECT_NEAR(d.distance, std::abs(mu2 - lam * k), 1e-7);
    EXPECT_NEAR(d.kl, mu2 / lam - k + k * std::log(k * lam / mu2), 1e-7);
  }
}

TEST(Tilt, GammaKlByIndependentQuadrature) {
  // KL(p2 || p1) with p2 the Gamma(2, 1 / (1 - lambda1)) density, integrated by exp-sinh.
  const auto t = sb::tilt_distribution(sb::Distribution::gamma(2, 1), 3.0);
  const double rate2 = 1 - t.spec.lambda1;
  auto p2 = [&](double x) { return rate2 * rate2 * x * std::exp(-rate2 * x); };
  auto log_ratio = [&](double x) { return 2 * std::log(rate2) + (1 - rate2) * x; };
  boost::math::quadrature::exp_sinh<double> es;
  const double kl = es.integrate([&](double x) { return p2(x) * log_ratio(x); });
  EXPECT_NEAR(sb::tilt_distance_and_kl(t.spec).kl, kl, 1e-8);
}

TEST(Tilt, NormalShiftsMean) {
  const auto t = sb::tilt_distribution(sb::Distribution::normal(0, 2), 3.0);
  EXPECT_NEAR(t.spec.lambda1, 3.0 / 4.0, 1e-8);
  EXPECT_NEAR(t.tilted.variance(), 4.0, 1e-6);
  const auto d = sb::tilt_distance_and_kl(t.spec);
  EXPECT_NEAR(d.distance, 3.0, 1e-8);
  EXPECT_NEAR(d.kl, 9.0 / 8.0, 1e-7);
}

TEST(Tilt, KernelFormAgreesWithMeanDifference) {
  const auto t = sb::tilt_distribution(sb::Distribution::beta(2, 3), 0.5);
  const auto d = sb::tilt_distance_and_kl(t.spec);
  EXPECT_NEAR(d.distance, 0.1, 1e-8);
  EXPECT_NEAR(d.distance_kernel_form, d.distance, 1e-6);
  EXPECT_NEAR(sb::oracle(t.spec.base, t.tilted).value_cdf, 0.1, 1e-6);
}

TEST(Tilt, TargetOutsideSupport) {
  try {
    sb::tilt_distribution(sb::Distribution::beta(2, 2), 1.5);
    FAIL();
  } catch (const sb::Error& e) {
    EXPECT_EQ(e.code(), sb::ErrorCode::MeanUnattainable);
  }
}

TEST(Tilt, MgfDivergesBelowTarget) {
  // Exponential(1) tilts only for t < 1, so every mean above 0 is reachable.
  const auto t = sb::tilt_distribution(sb::Distribution::exponential(1), 10.0);
  EXPECT_NEAR(t.spec.lambda1, 0.9, 1e-7);
}

TEST(Tilt, IdentityAtOwnMean) {
  const auto t = sb::tilt_distribution(sb::Distribution::gamma(2, 1), 2.0);
  EXPECT_NEAR(t.spec.lambda1, 0.0, 1e-9);
  EXPECT_NEAR(sb::tilt_distance_and_kl(t.spec).kl, 0.0, 1e-9);
}
