#include "steinbounds/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "steinbounds/error.hpp"
#include "steinbounds/quadrature.hpp"
#include "steinbounds/special.hpp"
#include "steinbounds/stein.hpp"

namespace steinbounds {
namespace {

constexpr double kSignBand = 1e-12;
constexpr double kCustomSignBand = 1e-9;

SupportInterval intersect(const SupportInterval& a, const SupportInterval& b) {
  const bool lo_from_a = a.lower() >= b.lower();
  const bool hi_from_a = a.upper() <= b.upper();
  const double lo = lo_from_a ? a.lower() : b.lower();
  const double hi = hi_from_a ? a.upper() : b.upper();
  if (!(lo < hi)) throw Error(ErrorCode::InvalidParams, "prior support misses the parameter space");
  return SupportInterval(lo, hi, lo_from_a ? a.lower_closed() : b.lower_closed(),
                         hi_from_a ? a.upper_closed() : b.upper_closed());
}

bool is_whole(double v) { return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v)); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidParams, std::string(what) + " must be positive");
}

BoundsResult closed_pair(double lower, double upper, bool exact = false) {
  BoundsResult r;
  r.lower = lower;
  r.upper = upper;
  r.exact = exact;
  r.method = exact ? BoundMethod::MonotoneLR : BoundMethod::SteinKernel;
  return r;
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::NormalKnownVariance: return "normal";
    case ModelKind::Binomial: return "binomial";
    case ModelKind::Poisson: return "poisson";
  }
  return "unknown";
}

std::string_view to_string(PriorKind kind) noexcept {
  switch (kind) {
    case PriorKind::Flat: return "flat";
    case PriorKind::Normal: return "normal";
    case PriorKind::Beta: return "beta";
    case PriorKind::Jeffreys: return "jeffreys";
    case PriorKind::Exponential: return "exponential";
    case PriorKind::Custom: return "custom";
  }
  return "unknown";
}

SamplingModel SamplingModel::normal(double sigma, int n, double xbar) {
  SamplingModel m{ModelKind::NormalKnownVariance, sigma, {n, xbar, 0}};
  m.validate();
  return m;
}

SamplingModel SamplingModel::binomial(int n, int y) {
  SamplingModel m{ModelKind::Binomial, 1.0, {n, 0.0, y}};
  m.validate();
  return m;
}

SamplingModel SamplingModel::poisson(int n, double xbar) {
  SamplingModel m{ModelKind::Poisson, 1.0, {n, xbar, 0}};
  m.validate();
  return m;
}

void SamplingModel::validate() const {
  if (data.n < 1) throw Error(ErrorCode::InvalidData, "n must be a positive integer");
  switch (kind) {
    case ModelKind::NormalKnownVariance:
      require_positive(sigma, "sigma");
      if (!std::isfinite(data.xbar)) throw Error(ErrorCode::InvalidData, "xbar must be finite");
      break;
    case ModelKind::Binomial:
      if (data.y < 0 || data.y > data.n) throw Error(ErrorCode::InvalidData, "y must lie in [0, n]");
      break;
    case ModelKind::Poisson: {
      const double total = data.n * data.xbar;
      if (!std::isfinite(total) || data.xbar < 0.0 || !is_whole(total)) {
        throw Error(ErrorCode::InvalidData, "n * xbar must be a nonnegative integer");
      }
      if (std::round(total) < 1.0) throw Error(ErrorCode::InvalidData, "the sample sum must be positive");
      break;
    }
  }
}

SupportInterval SamplingModel::parameter_space() const {
  switch (kind) {
    case ModelKind::NormalKnownVariance: return SupportInterval::real_line();
    case ModelKind::Binomial: return SupportInterval::unit_interval(false);
    case ModelKind::Poisson: return SupportInterval::positive_half_line();
  }
  return SupportInterval::real_line();
}

Distribution SamplingModel::flat_posterior() const {
  validate();
  switch (kind) {
    case ModelKind::NormalKnownVariance: return Distribution::normal(data.xbar, sigma / std::sqrt(data.n));
    case ModelKind::Binomial: return Distribution::beta(data.y + 1.0, data.n - data.y + 1.0);
    case ModelKind::Poisson: return Distribution::gamma(std::round(data.n * data.xbar) + 1.0, 1.0 / data.n);
  }
  throw Error(ErrorCode::InvalidParams, "unknown model");
}

Prior::Prior(PriorKind kind, std::vector<double> params, SupportInterval support, bool proper)
    : kind_(kind), params_(std::move(params)), support_(support), proper_(proper) {}

Prior Prior::flat() { return Prior(PriorKind::Flat, {}, SupportInterval::real_line(), false); }

Prior Prior::normal(double mu, double delta) {
  if (!std::isfinite(mu)) throw Error(ErrorCode::InvalidParams, "prior mean must be finite");
  require_positive(delta, "delta");
  return Prior(PriorKind::Normal, {mu, delta}, SupportInterval::real_line(), true);
}

Prior Prior::beta(double alpha, double beta) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  return Prior(PriorKind::Beta, {alpha, beta}, SupportInterval::unit_interval(false), true);
}

Prior Prior::jeffreys() { return Prior(PriorKind::Jeffreys, {}, SupportInterval::unit_interval(false), false); }

Prior Prior::exponential(double lambda) {
  require_positive(lambda, "lambda");
  return Prior(PriorKind::Exponential, {lambda}, SupportInterval::positive_half_line(true), true);
}

Prior Prior::custom(const std::string& density_expression, SupportInterval support) {
  Prior p(PriorKind::Custom, {}, support, false);
  p.expr_ = Expression::parse(density_expression);
  p.expr_text_ = density_expression;
  return p;
}

std::string Prior::name() const {
  switch (kind_) {
    case PriorKind::Flat: return "Flat";
    case PriorKind::Normal: return "Normal(" + std::to_string(params_[0]) + ", " + std::to_string(params_[1]) + ")";
    case PriorKind::Beta: return "Beta(" + std::to_string(params_[0]) + ", " + std::to_string(params_[1]) + ")";
    case PriorKind::Jeffreys: return "Jeffreys";
    case PriorKind::Exponential: return "Exponential(" + std::to_string(params_[0]) + ")";
    case PriorKind::Custom: return "Custom(" + expr_text_ + ")";
  }
  return "Prior";
}

double Prior::log_density(double t) const {
  if (!support_.contains(t)) return -kInf;
  switch (kind_) {
    case PriorKind::Flat: return 0.0;
    case PriorKind::Normal: return special::normal_log_pdf((t - params_[0]) / params_[1]) - std::log(params_[1]);
    case PriorKind::Beta: {
      const double a = params_[0];
      const double b = params_[1];
      const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
      return (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - lbeta;
    }
    case PriorKind::Jeffreys: return -0.5 * (std::log(t) + std::log1p(-t));
    case PriorKind::Exponential: return std::log(params_[0]) - params_[0] * t;
    case PriorKind::Custom: {
      const double v = (*expr_)(t);
      if (std::isnan(v) || v < 0.0) {
        throw Error(ErrorCode::NaNDensity, "prior density is negative or NaN at " + std::to_string(t));
      }
      return std::log(v);
    }
  }
  return -kInf;
}

double Prior::density(double t) const { return std::exp(log_density(t)); }

double Prior::score(double t, const QuadratureConfig& config) const {
  if (!support_.interior(t)) return 0.0;
  switch (kind_) {
    case PriorKind::Flat: return 0.0;
    case PriorKind::Normal: return -(t - params_[0]) / (params_[1] * params_[1]);
    case PriorKind::Beta: return (params_[0] - 1.0) / t - (params_[1] - 1.0) / (1.0 - t);
    case PriorKind::Jeffreys: return -0.5 / t + 0.5 / (1.0 - t);
    case PriorKind::Exponential: return -params_[0];
    case PriorKind::Custom: {
      const double h = fd_step(t, support_, config);
      return (log_density(t + h) - log_density(t - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double Prior::derivative(double t, const QuadratureConfig& config) const {
  const double lp = log_density(t);
  if (lp == -kInf) return 0.0;
  return std::exp(lp) * score(t, config);
}

PosteriorPair build_posteriors(const SamplingModel& model, const Prior& prior, const QuadratureConfig& config) {
  model.validate();
  const Distribution p1 = model.flat_posterior();
  const DataSummary& x = model.data;
  std::optional<Distribution> p2;
  std::vector<std::string> warnings;

  switch (prior.kind()) {
    case PriorKind::Flat:
      p2 = p1;
      break;
    case PriorKind::Normal:
      if (model.kind == ModelKind::NormalKnownVariance) {
        const double delta2 = prior.params()[1] * prior.params()[1];
        const double s2n = model.sigma * model.sigma / x.n;
        const double a = 1.0 / s2n + 1.0 / delta2;
        const double b = x.xbar / s2n + prior.params()[0] / delta2;
        p2 = Distribution::normal(b / a, 1.0 / std::sqrt(a));
      }
      break;
    case PriorKind::Beta:
      if (model.kind == ModelKind::Binomial) {
        p2 = Distribution::beta(prior.params()[0] + x.y, prior.params()[1] + x.n - x.y);
      }
      break;
    case PriorKind::Jeffreys:
      if (model.kind == ModelKind::Binomial) p2 = Distribution::beta(x.y + 0.5, x.n - x.y + 0.5);
      break;
    case PriorKind::Exponential:
      if (model.kind == ModelKind::Poisson) {
        p2 = Distribution::gamma(std::round(x.n * x.xbar) + 1.0, 1.0 / (x.n + prior.params()[0]));
      }
      break;
    case PriorKind::Custom: break;
  }

  const bool conjugate = p2.has_value();
  if (!p2) {
    const SupportInterval support = intersect(prior.support(), model.parameter_space());
    Window hint = p1.window();
    hint.lo = std::max(hint.lo, support.lower());
    hint.hi = std::min(hint.hi, support.upper());
    if (!(hint.lo < hint.hi)) hint = Window{};
    try {
      p2 = Distribution::custom([prior, p1](double t) { return prior.log_density(t) + p1.log_pdf(t); }, support,
                                config, hint.width() > 0.0 ? std::optional<Window>(hint) : std::nullopt,
                                "Posterior[" + prior.name() + "]");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonIntegrable) {
        throw Error(ErrorCode::ImproperPosterior, std::string("posterior does not normalise: ") + e.what());
      }
      throw;
    }
    const SupportInterval space = model.parameter_space();
    if (support.lower() > space.lower() || support.upper() < space.upper()) {
      warnings.push_back("prior support is strictly inside the parameter space; the prior jumps at its boundary");
    }
  }
  if (model.kind == ModelKind::Binomial && (x.y == 0 || x.y == x.n)) {
    warnings.push_back("binomial data on the boundary of the parameter space");
  }
  return PosteriorPair{p1, *p2, model, prior, conjugate, std::move(warnings)};
}

BoundsResult prior_impact_bounds(const PosteriorPair& pair, const QuadratureConfig& config) {
  const Distribution& p1 = pair.p1;
  const Distribution& p2 = pair.p2;
  const Prior& prior = pair.prior;
  const double mean_diff = std::abs(p2.mean() - p1.mean());

  if (prior.kind() == PriorKind::Flat) {
    BoundsResult r = closed_pair(0.0, 0.0, true);
    r.conditions.warnings = pair.warnings;
    return r;
  }

  const SteinKernel tau(p1, config);
  auto rho = [&](double t) { return prior.score(t, config); };
  auto tau_rho = [&](double t) {
    const double s = rho(t);
    return s == 0.0 ? 0.0 : tau(t) * s;
  };

  const Window w2 = p2.window();
  const std::vector<double> zeros = find_sign_changes(rho, w2.lo, w2.hi);
  const IntegrationResult signed22 = expectation(p2, tau_rho, config, zeros);
  const IntegrationResult abs22 = expectation(p2, [&](double t) { return std::abs(tau_rho(t)); }, config, zeros);

  // The same pair of quantities written against p1.
  const IntegrationResult norm24 = expectation(p1, [&](double t) { return prior.density(t); }, config);
  auto tau_dpi = [&](double t) {
    const double d = prior.derivative(t, config);
    return d == 0.0 ? 0.0 : tau(t) * d;
  };
  const IntegrationResult signed24 = expectation(p1, tau_dpi, config, zeros);
  const IntegrationResult abs24 = expectation(p1, [&](double t) { return std::abs(tau_dpi(t)); }, config, zeros);

  const double band = prior.kind() == PriorKind::Custom ? kCustomSignBand : kSignBand;
  bool pos = false;
  bool neg = false;
  const int n = std::max(config.grid_points, 3);
  for (int i = 0; i < n && !(pos && neg); ++i) {
    const double s = rho(p2.quantile((i + 0.5) / n));
    pos = pos || s > band;
    neg = neg || s < -band;
  }

  BoundsResult r;
  bool monotone_done = false;
  if (!(pos && neg)) {
    try {
      r = exact_distance_monotone(p1, p2, config);
      monotone_done = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotMonotone) throw;
    }
  }
  if (!monotone_done) {
    const LikelihoodRatio lr(p1, p2, config);
    r.method = BoundMethod::SteinKernel;
    r.lower = std::abs(signed22.value);
    r.upper_infinite = !abs22.converged || !std::isfinite(abs22.value);
    r.upper = r.upper_infinite ? kInf : abs22.value;
    r.conditions = check_conditions(p1, p2, tau, lr, config);
    if (r.upper_infinite) r.conditions.warnings.push_back("E[tau1 |rho0|] did not converge");
    if (!r.conditions.endpoint_limit_ok()) {
      r.lower = mean_diff;
      r.conditions.warnings.push_back("lower bound falls back to |E T2 - E T1|");
    }
  }
  r.conditions.warnings.insert(r.conditions.warnings.begin(), pair.warnings.begin(), pair.warnings.end());
  r.diagnostics["mean_difference"] = mean_diff;
  r.diagnostics["score_form_lower"] = std::abs(signed22.value);
  r.diagnostics["score_form_upper"] = abs22.value;
  r.diagnostics["ratio_form_lower"] = std::abs(signed24.value) / norm24.value;
  r.diagnostics["ratio_form_upper"] = abs24.value / norm24.value;
  r.diagnostics["ratio_form_discrepancy"] =
      std::max(std::abs(std::abs(signed24.value) / norm24.value - std::abs(signed22.value)),
               std::abs(abs24.value / norm24.value - abs22.value));
  return r;
}

BoundsResult normal_normal_closed_form(double sigma, int n, double xbar, double mu, double delta) {
  require_positive(sigma, "sigma");
  require_positive(delta, "delta");
  if (n < 1) throw Error(ErrorCode::InvalidData, "n must be a positive integer");
  const double s2 = sigma * sigma;
  const double lower = s2 / (n * delta * delta + s2) * std::abs(xbar - mu);
  const double spread = special::kSqrt2OverPi * sigma * s2 / (n * delta * std::sqrt(delta * delta * n + s2));
  return closed_pair(lower, lower + spread);
}

BoundsResult binomial_beta_closed_form(int n, int y, double alpha, double beta) {
  if (n < 1 || y < 0 || y > n) throw Error(ErrorCode::InvalidData, "need n >= 1 and 0 <= y <= n");
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  const double s = n + alpha + beta;
  const double lower = std::abs((y + 1.0) / (n + 2.0) * (alpha + beta - 2.0) / s - (alpha - 1.0) / s);
  const double a1 = std::abs(alpha - 1.0);
  const double b1 = std::abs(beta - 1.0);
  const double upper = (a1 + (y + alpha) / s * (b1 - a1)) / (n + 2.0);
  return closed_pair(lower, upper);
}

BoundsResult binomial_jeffreys_closed_form(int n, int y) {
  if (n < 1 || y < 0 || y > n) throw Error(ErrorCode::InvalidData, "need n >= 1 and 0 <= y <= n");
  const double n1 = n + 1.0;
  const double n2 = n + 2.0;
  const double lower = std::abs((y + 1.0) / n2 - 0.5) / n1;
  const double spread = std::sqrt((y + 0.5) * (n - y + 0.5) / (n2 * n1 * n1));
  const double upper = (spread + std::abs((y + 0.5) / n1 - 0.5)) / n2;
  return closed_pair(lower, upper);
}

BoundsResult poisson_exponential_exact(int n, double xbar, double lambda) {
  SamplingModel::poisson(n, xbar);
  require_positive(lambda, "lambda");
  const double value = lambda * xbar / (n + lambda) + lambda / (n * (n + lambda));
  return closed_pair(value, value, true);
}

BoundsResult poisson_general_bound(int n, double xbar, const Prior& prior, const QuadratureConfig& config) {
  const SamplingModel model = SamplingModel::poisson(n, xbar);
  const double var = (xbar + 1.0 / n) / n;
  if (prior.kind() == PriorKind::Flat) return closed_pair(0.0, 0.0, true);

  const PosteriorPair pair = build_posteriors(model, prior, config);
  double sup = 0.0;
  if (prior.kind() == PriorKind::Exponential) {
    sup = prior.params()[0] * prior.params()[0];
  } else {
    const Distribution& p1 = pair.p1;
    std::vector<double> grid;
    const int m = std::max(config.grid_points, 3);
    for (int i = 0; i < m; ++i) grid.push_back(p1.quantile((i + 0.5) / m));
    const double hi = 2.0 * p1.window().hi;
    for (int i = 1; i < m; ++i) grid.push_back(hi * i / m);
    const std::vector<std::vector<double>> approaches = {endpoint_approach(p1, -1), endpoint_approach(p1, +1)};
    sup = sup_abs_with_approach([&](double t) { return prior.derivative(t, config); }, std::move(grid), approaches);
  }

  BoundsResult r;
  r.method = BoundMethod::VarianceBound;
  r.lower = std::abs(pair.p2.mean() - pair.p1.mean());
  r.upper_infinite = !std::isfinite(sup);
  r.upper = r.upper_infinite ? kInf : sup * var;
  r.conditions.integrability_ok = !r.upper_infinite;
  if (r.upper_infinite) r.conditions.warnings.push_back("prior derivative is unbounded");
  r.diagnostics = {{"sup_abs_prior_derivative", sup}, {"variance_p1", var}};
  return r;
}

}  // namespace steinbounds
