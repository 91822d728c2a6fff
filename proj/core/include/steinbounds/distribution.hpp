#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steinbounds/config.hpp"
#include "steinbounds/support.hpp"

namespace steinbounds {

enum class Family { Normal, Beta, Gamma, Exponential, SkewNormal, Custom };

std::string_view to_string(Family family) noexcept;

namespace detail {
class DistributionModel;
}

/// A univariate continuous law.
///
/// Values are immutable after construction and cheap to copy; every
/// evaluation is a pure function. Density evaluation always goes through
/// the log-density. Families without a closed-form cdf (skew-normal and
/// custom densities) carry a cumulative table built by adaptive quadrature
/// at construction time.
///
/// Parameterisations:
///   Normal(mu, sigma)                  sigma > 0
///   Beta(alpha, beta)                  alpha, beta > 0
///   Gamma(shape k, scale lambda)       mean k * lambda
///   Exponential(rate r)                mean 1 / r
///   SkewNormal(location, scale, shape) density 2/w phi(z) Phi(shape z)
class Distribution {
 public:
  static Distribution normal(double mu, double sigma);
  static Distribution beta(double alpha, double beta);
  static Distribution gamma(double shape, double scale);
  static Distribution exponential(double rate);
  static Distribution skew_normal(double location, double scale, double shape,
                                  const QuadratureConfig& config = {});

  /// Catalog constructor: `params` in the order listed above.
  static Distribution make(Family family, std::span<const double> params,
                           const QuadratureConfig& config = {});

  /// Density given by a possibly unnormalised log-density on `support`.
  /// `hint` is a window where most of the mass is expected; it seeds the
  /// search for the effective integration range. Throws NonIntegrable when
  /// the normalising integral or the first two moments fail to converge,
  /// and NaNDensity when the density evaluates to NaN.
  static Distribution custom(std::function<double(double)> log_density, SupportInterval support,
                             const QuadratureConfig& config = {}, std::optional<Window> hint = {},
                             std::string label = "Custom");

  /// As `custom`, from a density instead of a log-density.
  static Distribution custom_pdf(std::function<double(double)> density, SupportInterval support,
                                 const QuadratureConfig& config = {}, std::optional<Window> hint = {},
                                 std::string label = "Custom");

  Family family() const noexcept;
  /// Family parameters in catalog order; empty for custom densities.
  const std::vector<double>& params() const noexcept;
  std::string name() const;

  const SupportInterval& support() const noexcept;
  double log_pdf(double x) const;
  double pdf(double x) const;
  double cdf(double x) const;
  /// Throws OutOfRange unless 0 < u < 1.
  double quantile(double u) const;
  double mean() const noexcept;
  double variance() const noexcept;
  double sd() const noexcept;

  /// Closed-form (log p)'(x), when the family provides one.
  std::optional<double> score(double x) const;
  bool has_analytic_score() const noexcept;

  /// Closed-form Stein kernel, when the family provides one.
  std::optional<double> analytic_kernel(double x) const;
  bool has_analytic_kernel() const noexcept;

  /// Integration window: support endpoints where finite, otherwise the
  /// tail_epsilon quantiles.
  const Window& window() const noexcept;

  /// log of the normalising constant of the user-supplied log-density
  /// (zero for catalog families).
  double log_normalizer() const noexcept;

 private:
  explicit Distribution(std::shared_ptr<const detail::DistributionModel> model);
  std::shared_ptr<const detail::DistributionModel> model_;
};

/// Window covering both laws, clipped to `clip`.
Window union_window(const Distribution& a, const Distribution& b, const SupportInterval& clip);

}  // namespace steinbounds
