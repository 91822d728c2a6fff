#include "steinbounds/stein.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "steinbounds/error.hpp"

namespace steinbounds {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Log-ratio below which the rescaled tail integrand is treated as zero.
constexpr double kTailLogFloor = -50.0;

QuadratureConfig tail_config(const Distribution& d, const QuadratureConfig& config) {
  QuadratureConfig cfg = config;
  cfg.abs_tol = config.abs_tol * std::min(1.0, d.variance());
  return cfg;
}

}  // namespace

IntegrationResult expectation(const Distribution& d, const RealFn& g, const QuadratureConfig& config,
                              std::span<const double> breakpoints) {
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  cuts.push_back(d.mean());
  IntegrateOptions opts;
  opts.breakpoints = cuts;
  auto integrand = [&](double x) {
    const double lp = d.log_pdf(x);
    if (lp == -kInf) return 0.0;
    return g(x) * std::exp(lp);
  };
  return integrate(integrand, d.window().lo, d.window().hi, config, opts);
}

double fd_step(double x, const SupportInterval& support, const QuadratureConfig& config) {
  const double s = config.fd_step_scale;
  double h = std::max(s, s * std::abs(x));
  if (support.lower_finite() && x > support.lower()) h = std::min(h, 0.5 * (x - support.lower()));
  if (support.upper_finite() && x < support.upper()) h = std::min(h, 0.5 * (support.upper() - x));
  return h > 0.0 ? h : s;
}

ScoreFunction score_function(const Distribution& d, const QuadratureConfig& config) {
  if (d.has_analytic_score()) {
    return {[d](double x) { return d.score(x).value_or(kNaN); }, true};
  }
  return {[d, config](double x) {
            const double h = fd_step(x, d.support(), config);
            return (d.log_pdf(x + h) - d.log_pdf(x - h)) / (2.0 * h);
          },
          false};
}

double centered_tail_integral(const Distribution& d, const RealFn& centered, double x, double median,
                              const QuadratureConfig& config) {
  const double lp_x = d.log_pdf(x);
  if (!std::isfinite(lp_x)) {
    throw Error(ErrorCode::KernelUnstable, "density underflows at x = " + std::to_string(x));
  }
  auto log_ratio = [&](double y) { return d.log_pdf(y) - lp_x; };
  auto integrand = [&](double y) {
    const double lr = log_ratio(y);
    if (lr == -kInf) return 0.0;
    return centered(y) * std::exp(lr);
  };
  const SupportInterval& s = d.support();
  const QuadratureConfig cfg = tail_config(d, config);
  const double step = 0.25 * d.sd();

  if (x <= median) {
    double lo = s.lower();
    if (!s.lower_finite()) {
      lo = find_tail_extent(log_ratio, std::min(x, d.window().lo), -1, step, kTailLogFloor, -kInf);
      if (std::isnan(lo)) throw Error(ErrorCode::KernelUnstable, "left tail does not decay");
    }
    const IntegrationResult r = integrate(integrand, lo, x, cfg);
    if (!std::isfinite(r.value)) throw Error(ErrorCode::KernelUnstable, "left-tail integral is not finite");
    return r.value;
  }
  double hi = s.upper();
  if (!s.upper_finite()) {
    hi = find_tail_extent(log_ratio, std::max(x, d.window().hi), +1, step, kTailLogFloor, kInf);
    if (std::isnan(hi)) throw Error(ErrorCode::KernelUnstable, "right tail does not decay");
  }
  const IntegrationResult r = integrate(integrand, x, hi, cfg);
  if (!std::isfinite(r.value)) throw Error(ErrorCode::KernelUnstable, "right-tail integral is not finite");
  return -r.value;
}

SteinKernel::SteinKernel(Distribution source, const QuadratureConfig& config, KernelMode mode)
    : source_(std::move(source)),
      config_(config),
      origin_(mode == KernelMode::Auto && source_.has_analytic_kernel() ? KernelOrigin::Analytic
                                                                         : KernelOrigin::Numeric),
      median_(source_.quantile(0.5)) {}

double SteinKernel::operator()(double x) const {
  if (origin_ == KernelOrigin::Analytic) return source_.analytic_kernel(x).value_or(0.0);
  if (!source_.support().interior(x)) return 0.0;
  const double mu = source_.mean();
  return centered_tail_integral(
      source_, [mu](double y) { return mu - y; }, x, median_, config_);
}

SteinKernel stein_kernel(const Distribution& d, const QuadratureConfig& config, KernelMode mode) {
  return SteinKernel(d, config, mode);
}

OperatorValue stein_operator_apply(const Distribution& d, const RealFn& f, const RealFn& f_prime, double x,
                                   const QuadratureConfig& config) {
  if (!d.support().interior(x)) return {0.0, false};
  OperatorValue out;
  double rho = kNaN;
  if (auto s = d.score(x)) {
    rho = *s;
  } else {
    const double h = fd_step(x, d.support(), config);
    rho = (d.log_pdf(x + h) - d.log_pdf(x - h)) / (2.0 * h);
    out.finite_difference = true;
  }
  out.value = f_prime(x) + f(x) * rho;
  return out;
}

InverseSteinOperator::InverseSteinOperator(Distribution d, RealFn h, const QuadratureConfig& config)
    : d_(std::move(d)), h_(std::move(h)), config_(config), median_(d_.quantile(0.5)) {
  const IntegrationResult r = expectation(d_, h_, config_);
  if (!r.converged || !std::isfinite(r.value)) {
    throw Error(ErrorCode::NonIntegrableTestFunction, "E[h(X)] did not converge");
  }
  mean_h_ = r.value;
}

double InverseSteinOperator::operator()(double x) const {
  if (!d_.support().interior(x)) return 0.0;
  const double mh = mean_h_;
  const RealFn& h = h_;
  return centered_tail_integral(
      d_, [&h, mh](double y) { return h(y) - mh; }, x, median_, config_);
}

double inverse_stein_operator(const Distribution& d, const RealFn& h, double x, const QuadratureConfig& config) {
  return InverseSteinOperator(d, h, config)(x);
}

double standardized_operator_apply(const Distribution& d, const SteinKernel& kernel, const RealFn& f,
                                   const RealFn& f_prime, double x) {
  if (!d.support().contains(x)) return 0.0;
  return kernel(x) * f_prime(x) + (d.mean() - x) * f(x);
}

GhFunction::GhFunction(const Distribution& d, const SteinKernel& kernel, RealFn h, const QuadratureConfig& config)
    : kernel_(kernel), inverse_(d, std::move(h), config) {}

double GhFunction::operator()(double x) const {
  const double tau = kernel_(x);
  if (!(tau > std::numeric_limits<double>::min()) || !std::isfinite(tau)) {
    throw Error(ErrorCode::KernelZero, "Stein kernel vanishes at x = " + std::to_string(x));
  }
  return inverse_(x) / tau;
}

double g_h_eval(const Distribution& d, const SteinKernel& kernel, const RealFn& h, double x,
                const QuadratureConfig& config) {
  return GhFunction(d, kernel, h, config)(x);
}

LikelihoodRatio::LikelihoodRatio(Distribution base, Distribution target, const QuadratureConfig& config)
    : base_(std::move(base)),
      target_(std::move(target)),
      config_(config),
      origin_(base_.has_analytic_score() && target_.has_analytic_score() ? DerivativeOrigin::Analytic
                                                                          : DerivativeOrigin::FiniteDifference) {
  if (!base_.support().contains(target_.support())) {
    throw Error(ErrorCode::SupportNotNested, "support of " + target_.name() + " is not inside support of " +
                                                 base_.name());
  }
}

double LikelihoodRatio::log_ratio(double x) const {
  if (!target_.support().contains(x)) return -kInf;
  const double lp2 = target_.log_pdf(x);
  if (lp2 == -kInf) return -kInf;
  return lp2 - base_.log_pdf(x);
}

double LikelihoodRatio::ratio(double x) const { return std::exp(log_ratio(x)); }

double LikelihoodRatio::log_derivative(double x) const {
  if (!target_.support().interior(x)) return 0.0;
  if (origin_ == DerivativeOrigin::Analytic) {
    const auto s2 = target_.score(x);
    const auto s1 = base_.score(x);
    if (s1 && s2) return *s2 - *s1;
  }
  const double h = fd_step(x, target_.support(), config_);
  return (log_ratio(x + h) - log_ratio(x - h)) / (2.0 * h);
}

double LikelihoodRatio::derivative(double x) const {
  const double lr = log_ratio(x);
  if (lr == -kInf) return 0.0;
  return std::exp(lr) * log_derivative(x);
}

double LikelihoodRatio::derivative_times_base(double x) const {
  if (!target_.support().interior(x)) return 0.0;
  const double lp2 = target_.log_pdf(x);
  if (lp2 == -kInf) return 0.0;
  return std::exp(lp2) * log_derivative(x);
}

LikelihoodRatio likelihood_ratio(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  return LikelihoodRatio(p1, p2, config);
}

KernelIdentityReport verify_kernel_identity(const Distribution& d, const SteinKernel& kernel,
                                            std::span<const TestFunction> test_fns,
                                            const QuadratureConfig& config, double tolerance) {
  KernelIdentityReport report;
  report.tolerance = tolerance;
  const double mu = d.mean();
  for (const TestFunction& t : test_fns) {
    const double lhs = expectation(d, [&](double x) { return kernel(x) * t.phi_prime(x); }, config).value;
    const double rhs = expectation(d, [&](double x) { return (x - mu) * t.phi(x); }, config).value;
    const double diff = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    const bool ok = diff <= tolerance;
    report.entries.push_back({t.name, lhs, rhs, diff, ok});
    report.passed = report.passed && ok;
  }
  return report;
}

}  // namespace steinbounds
