#include <cmath>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "steinbounds/bayes.hpp"
#include "steinbounds/error.hpp"
#include "steinbounds/oracle.hpp"
#include "steinbounds/special.hpp"

namespace sb = steinbounds;
namespace bq = boost::math::quadrature;

namespace {

double beta_expectation(double a, double b, const std::function<double(double)>& g) {
  const boost::math::beta_distribution<> d(a, b);
  bq::tanh_sinh<double> ts;
  return ts.integrate([&](double t) { return g(t) * boost::math::pdf(d, t); }, 0.0, 1.0);
}

}  // namespace

TEST(Posteriors, NormalConjugate) {
  const double sigma = 2, xbar = 0.7, mu = -1, delta = 0.5;
  const int n = 5;
  const auto pair = sb::build_posteriors(sb::SamplingModel::normal(sigma, n, xbar), sb::Prior::normal(mu, delta));
  const double a = n / (sigma * sigma) + 1 / (delta * delta);
  const double b = xbar / (sigma * sigma / n) + mu / (delta * delta);
  EXPECT_TRUE(pair.conjugate);
  EXPECT_NEAR(pair.p2.mean(), b / a, 1e-14);
  EXPECT_NEAR(pair.p2.variance(), 1 / a, 1e-14);
  EXPECT_NEAR(pair.p1.mean(), xbar, 1e-14);
  EXPECT_NEAR(pair.p1.variance(), sigma * sigma / n, 1e-14);
}

TEST(Posteriors, BinomialBetaConjugate) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::binomial(10, 5), sb::Prior::beta(2, 2));
  EXPECT_EQ(pair.p2.family(), sb::Family::Beta);
  EXPECT_EQ(pair.p2.params(), (std::vector<double>{7, 7}));
  EXPECT_EQ(pair.p1.params(), (std::vector<double>{6, 6}));
}

TEST(Posteriors, PoissonExponentialConjugate) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::poisson(10, 2), sb::Prior::exponential(1));
  EXPECT_EQ(pair.p2.family(), sb::Family::Gamma);
  EXPECT_NEAR(pair.p2.params()[0], 21, 1e-14);
  EXPECT_NEAR(pair.p2.params()[1], 1.0 / 11, 1e-15);
  EXPECT_NEAR(pair.p1.params()[1], 0.1, 1e-15);
}

TEST(Posteriors, CustomPriorMatchesConjugate) {
  const auto conj = sb::build_posteriors(sb::SamplingModel::binomial(10, 5), sb::Prior::beta(2, 2));
  const auto cust = sb::build_posteriors(sb::SamplingModel::binomial(10, 5),
                                         sb::Prior::custom("6*x*(1-x)", sb::SupportInterval::unit_interval(false)));
  EXPECT_FALSE(cust.conjugate);
  for (double t : {0.1, 0.3, 0.5, 0.8}) EXPECT_NEAR(cust.p2.cdf(t), conj.p2.cdf(t), 1e-9);
}

TEST(Posteriors, InvalidData) {
  EXPECT_THROW(sb::SamplingModel::binomial(10, 11).validate(), sb::Error);
  EXPECT_THROW(sb::SamplingModel::poisson(0, 1).validate(), sb::Error);
  EXPECT_THROW(sb::SamplingModel::poisson(3, -1).validate(), sb::Error);
}

TEST(Posteriors, BoundaryDataWarns) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::binomial(10, 0), sb::Prior::beta(2, 2));
  EXPECT_FALSE(pair.warnings.empty());
}

TEST(Priors, JeffreysIsImproper) {
  EXPECT_FALSE(sb::Prior::jeffreys().proper());
  EXPECT_TRUE(sb::Prior::beta(2, 2).proper());
  EXPECT_FALSE(sb::Prior::flat().proper());
}

TEST(Priors, ScoresAreAnalytic) {
  EXPECT_NEAR(sb::Prior::normal(1, 2).score(3), -0.5, 1e-15);
  EXPECT_NEAR(sb::Prior::beta(3, 2).score(0.25), 2 / 0.25 - 1 / 0.75, 1e-13);
  EXPECT_NEAR(sb::Prior::exponential(2).score(5), -2, 1e-15);
  EXPECT_NEAR(sb::Prior::exponential(2).derivative(0.5), -4 * std::exp(-1.0), 1e-14);
  EXPECT_NEAR(sb::Prior::custom("exp(-2*x)", sb::SupportInterval::positive_half_line()).score(0.7), -2, 1e-6);
}

TEST(PriorImpact, NormalNormalClosedForm) {
  const auto c = sb::normal_normal_closed_form(1, 4, 0.5, 0, 1);
  EXPECT_NEAR(c.lower, 0.1, 1e-15);
  EXPECT_NEAR(c.upper, 0.1 + sb::special::kSqrt2OverPi / (4 * std::sqrt(5.0)), 1e-15);
}

TEST(PriorImpact, NormalNormalClosedUpperByQuadrature) {
  // The closed upper bounds E|T2 - mu| by |E T2 - mu| + E|T2 - E T2|, scaled by sigma^2 / (n delta^2).
  const double sigma = 1, xbar = 0.5, mu = 0, delta = 1;
  const int n = 4;
  const double a = n / (sigma * sigma) + 1 / (delta * delta);
  const double m2 = (xbar * n / (sigma * sigma) + mu / (delta * delta)) / a;
  const boost::math::normal_distribution<> p2(m2, 1 / std::sqrt(a));
  const double scale = sigma * sigma / (n * delta * delta);
  const double q = bq::gauss_kronrod<double, 61>::integrate(
      [&](double t) { return scale * (std::abs(m2 - mu) + std::abs(t - m2)) * boost::math::pdf(p2, t); }, -10.0, 10.0,
      20, 1e-14);
  EXPECT_NEAR(q, sb::normal_normal_closed_form(sigma, n, xbar, mu, delta).upper, 1e-10);
}

TEST(PriorImpact, NormalNormalEngine) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::normal(1, 4, 0.5), sb::Prior::normal(0, 1));
  const auto r = sb::prior_impact_bounds(pair);
  const auto closed = sb::normal_normal_closed_form(1, 4, 0.5, 0, 1);
  EXPECT_NEAR(r.lower, closed.lower, 1e-7);
  EXPECT_LE(r.upper, closed.upper + 1e-9);
  // The engine integrates (sigma^2 / n) E|rho0(T2)| without the triangle inequality.
  const boost::math::normal_distribution<> p2(0.4, 1 / std::sqrt(5.0));
  const double direct = bq::gauss_kronrod<double, 61>::integrate(
      [&](double t) { return 0.25 * std::abs(t) * boost::math::pdf(p2, t); }, -10.0, 10.0, 20, 1e-14);
  EXPECT_NEAR(r.upper, direct, 1e-7);
  const auto o = sb::oracle(pair.p1, pair.p2);
  EXPECT_GE(o.value_cdf, r.lower - 1e-7);
  EXPECT_LE(o.value_cdf, r.upper + 1e-7);
}

TEST(PriorImpact, NormalModelGeneralPrior) {
  // Bounds are (sigma^2 / n) |E rho0(T2)| and (sigma^2 / n) E|rho0(T2)|.
  const auto prior = sb::Prior::custom("exp(-x^4/4)", sb::SupportInterval::real_line());
  const auto pair = sb::build_posteriors(sb::SamplingModel::normal(1, 3, 0.8), prior);
  const auto r = sb::prior_impact_bounds(pair);
  const auto e1 = sb::expectation(pair.p2, [](double t) { return -t * t * t; }, {});
  const auto e2 = sb::expectation(pair.p2, [](double t) { return std::abs(t * t * t); }, {});
  EXPECT_NEAR(r.upper, e2.value / 3, 1e-7);
  EXPECT_NEAR(std::max(r.lower, 0.0), std::max(std::abs(e1.value) / 3, std::abs(pair.p2.mean() - 0.8)), 1e-7);
}

TEST(PriorImpact, MonotonePriorGivesEquality) {
  // rho0 = -(t - mu) / delta^2 changes sign, so use a logistic-type prior increasing everywhere.
  const auto prior = sb::Prior::custom("1/(1+exp(-x))", sb::SupportInterval::real_line());
  const auto r = sb::prior_impact_bounds(sb::build_posteriors(sb::SamplingModel::normal(1, 4, 0.5), prior));
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.lower, r.upper, 1e-7);
}

TEST(PriorImpact, NormalNormalVanishesAsNGrows) {
  double prev = sb::normal_normal_closed_form(1, 100, 0.5, 0, 1).upper;
  for (int n : {1000, 10000}) {
    const double cur = sb::normal_normal_closed_form(1, n, 0.5, 0, 1).upper;
    EXPECT_LT(cur, prev);
    EXPECT_NEAR(cur / prev, 0.1, 0.02);
    prev = cur;
  }
}

TEST(PriorImpact, BetaClosedForm) {
  const auto c = sb::binomial_beta_closed_form(10, 5, 2, 2);
  EXPECT_NEAR(c.lower, 0.0, 1e-15);
  EXPECT_NEAR(c.upper, 1.0 / 12.0, 1e-15);
  const auto u = sb::binomial_beta_closed_form(10, 3, 1, 1);
  EXPECT_EQ(u.lower, 0.0);
  EXPECT_EQ(u.upper, 0.0);
}

TEST(PriorImpact, BetaClosedUpperByQuadrature) {
  // tau1 |rho0| = |(a - 1)(1 - t) - (b - 1) t| / (n + 2), relaxed termwise.
  for (auto [n, y, a, b] : {std::tuple{10, 5, 2.0, 2.0}, {20, 3, 0.5, 3.0}, {7, 6, 4.0, 1.5}}) {
    const double q = beta_expectation(y + a, n - y + b, [&](double t) {
      return (std::abs(a - 1) * (1 - t) + std::abs(b - 1) * t) / (n + 2.0);
    });
    EXPECT_NEAR(q, sb::binomial_beta_closed_form(n, y, a, b).upper, 1e-10);
  }
}

TEST(PriorImpact, BetaEngine) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::binomial(10, 5), sb::Prior::beta(2, 2));
  const auto r = sb::prior_impact_bounds(pair);
  const double direct = beta_expectation(7, 7, [](double t) { return std::abs(1 - 2 * t) / 12.0; });
  EXPECT_NEAR(r.lower, 0.0, 1e-9);
  EXPECT_NEAR(r.upper, direct, 1e-7);
  EXPECT_LE(r.upper, 1.0 / 12.0);
  const auto o = sb::oracle(pair.p1, pair.p2);
  EXPECT_LE(o.value_cdf, r.upper + 1e-7);
}

TEST(PriorImpact, JeffreysClosedForm) {
  const auto c = sb::binomial_jeffreys_closed_form(10, 5);
  EXPECT_NEAR(c.lower, 0.0, 1e-15);
  EXPECT_NEAR(c.upper, std::sqrt(30.25 / 1452) / 12, 1e-15);
  // y = n/2 gives upper = 1 / (2 (n + 2)^{3/2}).
  for (int n : {10, 100, 1000}) {
    EXPECT_NEAR(sb::binomial_jeffreys_closed_form(n, n / 2).upper, 0.5 * std::pow(n + 2.0, -1.5), 1e-15);
  }
}

TEST(PriorImpact, JeffreysClosedUpperByQuadrature) {
  // tau1 |rho0| = |t - 1/2| / (n + 2); the closed form bounds E|T - 1/2| by sd + |E T - 1/2|.
  for (auto [n, y] : {std::pair{10, 5}, {30, 11}}) {
    const double a = y + 0.5, b = n - y + 0.5;
    const double m = a / (a + b);
    const double var = beta_expectation(a, b, [&](double t) { return (t - m) * (t - m); });
    EXPECT_NEAR((std::sqrt(var) + std::abs(m - 0.5)) / (n + 2.0), sb::binomial_jeffreys_closed_form(n, y).upper,
                1e-10);
  }
}

TEST(PriorImpact, JeffreysEngine) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::binomial(10, 5), sb::Prior::jeffreys());
  const auto r = sb::prior_impact_bounds(pair);
  const double direct = beta_expectation(5.5, 5.5, [](double t) { return std::abs(t - 0.5) / 12.0; });
  EXPECT_NEAR(r.upper, direct, 1e-7);
  EXPECT_LE(r.upper, sb::binomial_jeffreys_closed_form(10, 5).upper);
}

TEST(PriorImpact, PoissonExact) {
  const auto c = sb::poisson_exponential_exact(10, 2, 1);
  EXPECT_NEAR(c.lower, 21.0 / 110.0, 1e-15);
  EXPECT_TRUE(c.exact);
  const auto o = sb::oracle(sb::Distribution::gamma(21, 0.1), sb::Distribution::gamma(21, 1.0 / 11));
  EXPECT_NEAR(o.value_cdf, 21.0 / 110.0, 1e-6);
}

TEST(PriorImpact, PoissonGeneralBound) {
  const auto g = sb::poisson_general_bound(10, 2, sb::Prior::exponential(1));
  EXPECT_NEAR(g.upper, 0.21, 1e-12);
  EXPECT_GE(g.upper, 21.0 / 110.0);
  // Exact value and bound differ by n / (lambda (n + lambda)).
  for (double lam : {0.5, 2.0}) {
    const double ratio = sb::poisson_exponential_exact(10, 2, lam).upper /
                         sb::poisson_general_bound(10, 2, sb::Prior::exponential(lam)).upper;
    EXPECT_NEAR(ratio, 10 / (lam * (10 + lam)), 1e-9);
  }
}

TEST(PriorImpact, PoissonEngineMatchesExact) {
  const auto r = sb::prior_impact_bounds(sb::build_posteriors(sb::SamplingModel::poisson(10, 2),
                                                              sb::Prior::exponential(1)));
  EXPECT_NEAR(r.lower, 21.0 / 110.0, 1e-9);
}
