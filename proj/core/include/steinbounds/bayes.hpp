#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steinbounds/bounds.hpp"
#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"
#include "steinbounds/expression.hpp"

namespace steinbounds {

/// Sufficient statistics of the observed sample.
struct DataSummary {
  int n = 1;
  double xbar = 0.0;
  int y = 0;
};

enum class ModelKind { NormalKnownVariance, Binomial, Poisson };
std::string_view to_string(ModelKind kind) noexcept;

struct SamplingModel {
  ModelKind kind = ModelKind::NormalKnownVariance;
  /// Known standard deviation of a single observation (normal model only).
  double sigma = 1.0;
  DataSummary data;

  static SamplingModel normal(double sigma, int n, double xbar);
  static SamplingModel binomial(int n, int y);
  static SamplingModel poisson(int n, double xbar);

  /// Throws InvalidData (InvalidParams for sigma).
  void validate() const;
  /// Parameter space of theta.
  SupportInterval parameter_space() const;
  /// Posterior under a flat prior.
  Distribution flat_posterior() const;
};

enum class PriorKind { Flat, Normal, Beta, Jeffreys, Exponential, Custom };
std::string_view to_string(PriorKind kind) noexcept;

/// Prior density pi0 on theta, possibly improper. Improper priors are only
/// ever normalised through the posterior.
class Prior {
 public:
  static Prior flat();
  static Prior normal(double mu, double delta);
  static Prior beta(double alpha, double beta);
  /// 1 / sqrt(theta (1 - theta)) on (0, 1).
  static Prior jeffreys();
  static Prior exponential(double lambda);
  /// Density given by an expression in `x` (the parameter), positive on
  /// `support`. Treated as unnormalised.
  static Prior custom(const std::string& density_expression, SupportInterval support);

  PriorKind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }
  const SupportInterval& support() const noexcept { return support_; }
  bool proper() const noexcept { return proper_; }
  const std::string& expression() const noexcept { return expr_text_; }
  std::string name() const;

  /// log pi0(theta), -inf outside the support. Normalised for proper
  /// catalog priors.
  double log_density(double theta) const;
  double density(double theta) const;
  /// rho0 = pi0' / pi0; analytic except for custom priors.
  double score(double theta, const QuadratureConfig& config = {}) const;
  /// pi0'(theta) = pi0(theta) rho0(theta).
  double derivative(double theta, const QuadratureConfig& config = {}) const;

 private:
  Prior(PriorKind kind, std::vector<double> params, SupportInterval support, bool proper);
  PriorKind kind_;
  std::vector<double> params_;
  SupportInterval support_;
  bool proper_;
  std::string expr_text_;
  std::optional<Expression> expr_;
};

struct PosteriorPair {
  Distribution p1;  ///< flat-prior posterior
  Distribution p2;  ///< posterior under the prior
  SamplingModel model;
  Prior prior;
  bool conjugate = false;
  std::vector<std::string> warnings;
};

/// Conjugate closed forms where they exist, otherwise p2 is built from
/// pi0 p1 by quadrature. Throws InvalidData and ImproperPosterior.
PosteriorPair build_posteriors(const SamplingModel& model, const Prior& prior, const QuadratureConfig& config = {});

/// lower = |E[tau1(T2) rho0(T2)]|, upper = E[tau1(T2) |rho0(T2)|] against
/// p2. Constant-sign rho0 takes the monotone path and yields the exact
/// distance. The same quantities written against p1 and divided by
/// E[pi0(T1)] are kept in diagnostics as a cross-check.
BoundsResult prior_impact_bounds(const PosteriorPair& pair, const QuadratureConfig& config = {});

/// Normal model with a normal prior.
BoundsResult normal_normal_closed_form(double sigma, int n, double xbar, double mu, double delta);

/// Binomial model with a Beta(alpha, beta) prior.
BoundsResult binomial_beta_closed_form(int n, int y, double alpha, double beta);

/// Binomial model with the Jeffreys prior.
BoundsResult binomial_jeffreys_closed_form(int n, int y);

/// Poisson model with an Exponential(lambda) prior: the exact distance
/// lambda xbar / (n + lambda) + lambda / (n (n + lambda)).
BoundsResult poisson_exponential_exact(int n, double xbar, double lambda);

/// Poisson model, any prior: upper = sup |pi0'| (xbar + 1/n) / n with pi0
/// the prior density itself, lower = |E T2 - E T1|.
BoundsResult poisson_general_bound(int n, double xbar, const Prior& prior, const QuadratureConfig& config = {});

}  // namespace steinbounds
