#include <cmath>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "steinbounds/error.hpp"
#include "steinbounds/special.hpp"
#include "steinbounds/stein.hpp"

namespace sb = steinbounds;
namespace bq = boost::math::quadrature;

namespace {

// tau(x) = (1/p(x)) int_lo^x (mu - y) p(y) dy with Boost's Gauss-Kronrod.
double reference_kernel(const sb::Distribution& d, double x) {
  const double mu = d.mean();
  const double lo = d.window().lo;
  const double v = bq::gauss_kronrod<double, 61>::integrate([&](double y) { return (mu - y) * d.pdf(y); }, lo, x, 20,
                                                            1e-13);
  return v / d.pdf(x);
}

}  // namespace

TEST(SteinKernel, AnalyticForms) {
  const auto n = sb::Distribution::normal(1, 3);
  const auto b = sb::Distribution::beta(2, 5);
  const auto g = sb::Distribution::gamma(2.5, 1.5);
  const auto e = sb::Distribution::exponential(4.0);
  for (double x : {0.1, 0.4, 0.9}) {
    EXPECT_NEAR(sb::stein_kernel(n)(x), 9.0, 1e-14);
    EXPECT_NEAR(sb::stein_kernel(b)(x), x * (1 - x) / 7.0, 1e-14);
    EXPECT_NEAR(sb::stein_kernel(g)(x), 1.5 * x, 1e-14);
    EXPECT_NEAR(sb::stein_kernel(e)(x), x / 4.0, 1e-14);
  }
  EXPECT_EQ(sb::stein_kernel(n).origin(), sb::KernelOrigin::Analytic);
}

TEST(SteinKernel, NumericMatchesAnalytic) {
  for (const auto& d : {sb::Distribution::normal(0, 1), sb::Distribution::beta(2, 3), sb::Distribution::gamma(2, 1),
                        sb::Distribution::beta(0.8, 1.2)}) {
    const auto k = sb::stein_kernel(d, {}, sb::KernelMode::ForceNumeric);
    EXPECT_EQ(k.origin(), sb::KernelOrigin::Numeric);
    for (double u : {0.001, 0.1, 0.5, 0.9, 0.999}) {
      const double x = d.quantile(u);
      EXPECT_NEAR(k(x), *d.analytic_kernel(x), 1e-7 * std::max(1.0, *d.analytic_kernel(x))) << d.name() << " at " << x;
    }
  }
}

TEST(SteinKernel, NormalDeepTailsStayFinite) {
  const auto k = sb::stein_kernel(sb::Distribution::normal(0, 1), {}, sb::KernelMode::ForceNumeric);
  for (double x : {-12.0, -6.0, 6.0, 9.0}) EXPECT_NEAR(k(x), 1.0, 1e-6) << x;
}

TEST(SteinKernel, SkewNormalAgainstDirectQuadrature) {
  const auto sn = sb::Distribution::skew_normal(0, 1, 3);
  const auto k = sb::stein_kernel(sn);
  for (double x : {-1.0, 0.0, 0.5, 1.5}) EXPECT_NEAR(k(x), reference_kernel(sn, x), 1e-8) << x;
}

TEST(SteinKernel, ZeroOutsideSupport) {
  const auto k = sb::stein_kernel(sb::Distribution::gamma(2, 1), {}, sb::KernelMode::ForceNumeric);
  EXPECT_EQ(k(-1.0), 0.0);
}

TEST(SteinKernel, MeanIsVariance) {
  for (const auto& d : {sb::Distribution::skew_normal(0, 1, 2), sb::Distribution::gamma(0.8, 2),
                        sb::Distribution::beta(3, 1.5)}) {
    const auto k = sb::stein_kernel(d, {}, sb::KernelMode::ForceNumeric);
    const auto r = sb::expectation(d, [&](double x) { return k(x); }, {});
    EXPECT_NEAR(r.value, d.variance(), 1e-7 * std::max(1.0, d.variance())) << d.name();
  }
}

TEST(SteinOperator, NormalForm) {
  const auto n = sb::Distribution::normal(1, 2);
  auto f = [](double x) { return std::sin(x); };
  auto fp = [](double x) { return std::cos(x); };
  for (double x : {-1.0, 0.5, 3.0}) {
    EXPECT_NEAR(sb::stein_operator_apply(n, f, fp, x).value, std::cos(x) - (x - 1) / 4.0 * std::sin(x), 1e-13);
  }
}

TEST(SteinOperator, ZeroOutsideSupport) {
  auto f = [](double) { return 1.0; };
  auto fp = [](double) { return 0.0; };
  EXPECT_EQ(sb::stein_operator_apply(sb::Distribution::beta(2, 2), f, fp, 1.5).value, 0.0);
  EXPECT_EQ(sb::stein_operator_apply(sb::Distribution::exponential(1), f, fp, -0.5).value, 0.0);
}

TEST(SteinOperator, ExpectationVanishes) {
  const auto sn = sb::Distribution::skew_normal(0, 1, 2);
  auto f = [](double x) { return std::tanh(x); };
  auto fp = [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); };
  const auto r = sb::expectation(sn, [&](double x) { return sb::stein_operator_apply(sn, f, fp, x).value; }, {});
  EXPECT_NEAR(r.value, 0.0, 1e-7);
}

TEST(InverseStein, RecoversKernel) {
  const auto n = sb::Distribution::normal(0, 1);
  for (double x : {-2.0, 0.0, 1.0}) {
    EXPECT_NEAR(sb::inverse_stein_operator(n, [](double y) { return 0.0 - y; }, x), 1.0, 1e-8);
  }
}

TEST(InverseStein, BetaIdentityAgainstDirectQuadrature) {
  const auto b = sb::Distribution::beta(2, 2);
  const boost::math::beta_distribution<> ref(2, 2);
  // (1/p(x)) int_0^x (y - 1/2) p(y) dy by tanh-sinh.
  bq::tanh_sinh<double> ts;
  const double x = 0.5;
  const double direct = ts.integrate([&](double y) { return (y - 0.5) * boost::math::pdf(ref, y); }, 0.0, x) /
                        boost::math::pdf(ref, x);
  EXPECT_NEAR(sb::inverse_stein_operator(b, [](double y) { return y; }, x), direct, 1e-10);
}

TEST(InverseStein, SolvesSteinEquation) {
  const auto g = sb::Distribution::gamma(3, 1);
  auto h = [](double y) { return std::sin(y); };
  const sb::InverseSteinOperator inv(g, h);
  for (double x : {0.7, 2.0, 5.0}) {
    const double step = 1e-5;
    const double fp = (inv(x + step) - inv(x - step)) / (2 * step);
    const double rho = *g.score(x);
    EXPECT_NEAR(fp + rho * inv(x), h(x) - inv.mean_of_h(), 1e-6) << x;
  }
}

TEST(InverseStein, NonIntegrableTestFunction) {
  try {
    sb::InverseSteinOperator(sb::Distribution::gamma(2, 1), [](double y) { return std::exp(y * y); });
    FAIL();
  } catch (const sb::Error& e) {
    EXPECT_EQ(e.code(), sb::ErrorCode::NonIntegrableTestFunction);
  }
}

TEST(GhFunction, BoundedForLipschitzFunctions) {
  const auto n = sb::Distribution::normal(0, 1);
  const auto b = sb::Distribution::beta(2, 3);
  const sb::GhFunction gid(n, sb::stein_kernel(n), [](double y) { return y; });
  const sb::GhFunction gabs(b, sb::stein_kernel(b), [](double y) { return std::abs(y); });
  for (int i = 1; i < 100; ++i) {
    const double u = i / 100.0;
    EXPECT_LE(std::abs(gid(n.quantile(u))), 1 + 1e-6);
    EXPECT_LE(std::abs(gabs(b.quantile(u))), 1 + 1e-6);
  }
  // h = Id on the normal gives g_h = -1 exactly.
  EXPECT_NEAR(gid(0.3), -1.0, 1e-8);
}

TEST(LikelihoodRatio, SkewNormal) {
  const double lambda = 2.0;
  const auto lr = sb::likelihood_ratio(sb::Distribution::normal(0, 1), sb::Distribution::skew_normal(0, 1, lambda));
  for (double x : {-1.0, 0.0, 0.7}) {
    EXPECT_NEAR(lr.ratio(x), 2 * sb::special::normal_cdf(lambda * x), 1e-12);
    EXPECT_NEAR(lr.derivative(x), 2 * lambda * sb::special::normal_pdf(lambda * x), 1e-7);
  }
}

TEST(LikelihoodRatio, GaussianLogDerivative) {
  const double m1 = 0.5, s1 = 2.0, m2 = -1.0, s2 = 1.5;
  const auto lr = sb::likelihood_ratio(sb::Distribution::normal(m1, s1), sb::Distribution::normal(m2, s2));
  EXPECT_EQ(lr.derivative_origin(), sb::DerivativeOrigin::Analytic);
  for (double x : {-2.0, 0.0, 3.0}) {
    const double expect = x * (1 / (s1 * s1) - 1 / (s2 * s2)) + (m2 / (s2 * s2) - m1 / (s1 * s1));
    EXPECT_NEAR(lr.log_derivative(x), expect, 1e-13);
  }
}

TEST(LikelihoodRatio, NotNested) {
  try {
    sb::likelihood_ratio(sb::Distribution::beta(2, 2), sb::Distribution::normal(0, 1));
    FAIL();
  } catch (const sb::Error& e) {
    EXPECT_EQ(e.code(), sb::ErrorCode::SupportNotNested);
  }
}

TEST(KernelIdentity, IdentityAndSquare) {
  std::vector<sb::TestFunction> fns = {
      {"id", [](double x) { return x; }, [](double) { return 1.0; }},
      {"square", [](double x) { return x * x; }, [](double x) { return 2 * x; }},
  };
  for (const auto& d : {sb::Distribution::beta(2, 2), sb::Distribution::skew_normal(0, 1, 1),
                        sb::Distribution::gamma(0.8, 2)}) {
    const auto rep = sb::verify_kernel_identity(d, sb::stein_kernel(d), fns);
    EXPECT_TRUE(rep.passed) << d.name();
    EXPECT_NEAR(rep.entries[0].lhs, d.variance(), 1e-8);
    EXPECT_NEAR(rep.entries[0].rhs, d.variance(), 1e-8);
  }
}

TEST(KernelIdentity, BetaSquareByDirectQuadrature) {
  // Both sides for phi(x) = x^2 on Beta(2, 2) with Boost quadrature.
  const boost::math::beta_distribution<> ref(2, 2);
  bq::tanh_sinh<double> ts;
  const double lhs = ts.integrate([&](double x) { return x * (1 - x) / 4 * 2 * x * boost::math::pdf(ref, x); }, 0.0, 1.0);
  const double rhs = ts.integrate([&](double x) { return (x - 0.5) * x * x * boost::math::pdf(ref, x); }, 0.0, 1.0);
  EXPECT_NEAR(lhs, rhs, 1e-12);
  std::vector<sb::TestFunction> fns = {{"square", [](double x) { return x * x; }, [](double x) { return 2 * x; }}};
  const auto d = sb::Distribution::beta(2, 2);
  const auto rep = sb::verify_kernel_identity(d, sb::stein_kernel(d, {}, sb::KernelMode::ForceNumeric), fns);
  EXPECT_NEAR(rep.entries[0].lhs, lhs, 1e-7);
  EXPECT_NEAR(rep.entries[0].rhs, rhs, 1e-7);
}
