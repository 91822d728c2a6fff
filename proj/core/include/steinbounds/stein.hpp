#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"
#include "steinbounds/quadrature.hpp"

namespace steinbounds {

/// E[g(X)] by adaptive quadrature over the distribution's window.
IntegrationResult expectation(const Distribution& d, const RealFn& g, const QuadratureConfig& config,
                              std::span<const double> breakpoints = {});

/// Central finite-difference step at x: max(s, s|x|) with s the configured
/// scale, shrunk so that x +/- h stays inside `support`.
double fd_step(double x, const SupportInterval& support, const QuadratureConfig& config);

/// Score rho = p'/p of a density.
struct ScoreFunction {
  RealFn eval;
  bool analytic = false;
};

/// Analytic score when the family has one, central differences of the
/// log-density otherwise.
ScoreFunction score_function(const Distribution& d, const QuadratureConfig& config = {});

enum class KernelOrigin { Analytic, Numeric };
enum class KernelMode { Auto, ForceNumeric };

/// Stein kernel tau_P(x) = (1/p(x)) int_a^x (mu - y) p(y) dy.
///
/// The numeric path integrates from whichever endpoint is nearer in
/// probability (the right-tail form above the median) and divides by p(x)
/// inside the integrand, so it stays finite deep in the tails.
class SteinKernel {
 public:
  SteinKernel(Distribution source, const QuadratureConfig& config = {}, KernelMode mode = KernelMode::Auto);

  /// tau(x); zero outside the support. Throws KernelUnstable when p(x)
  /// underflows.
  double operator()(double x) const;
  KernelOrigin origin() const noexcept { return origin_; }
  const Distribution& source() const noexcept { return source_; }

 private:
  Distribution source_;
  QuadratureConfig config_;
  KernelOrigin origin_;
  double median_;
};

SteinKernel stein_kernel(const Distribution& d, const QuadratureConfig& config = {},
                         KernelMode mode = KernelMode::Auto);

/// (1/p(x)) int_a^x g(y) p(y) dy for a g with E[g(X)] = 0, using the
/// right-tail form -(1/p(x)) int_x^b g p when x is above `median`.
double centered_tail_integral(const Distribution& d, const RealFn& centered, double x, double median,
                              const QuadratureConfig& config);

struct OperatorValue {
  double value = 0.0;
  /// The score at x came from finite differences.
  bool finite_difference = false;
};

/// T_P f(x) = f'(x) + f(x) rho(x) in the support, 0 outside.
OperatorValue stein_operator_apply(const Distribution& d, const RealFn& f, const RealFn& f_prime, double x,
                                   const QuadratureConfig& config = {});

/// Inverse Stein operator applied to h - E[h(X)]. E[h(X)] is computed once
/// at construction; throws NonIntegrableTestFunction if it diverges.
class InverseSteinOperator {
 public:
  InverseSteinOperator(Distribution d, RealFn h, const QuadratureConfig& config = {});

  double operator()(double x) const;
  double mean_of_h() const noexcept { return mean_h_; }

 private:
  Distribution d_;
  RealFn h_;
  QuadratureConfig config_;
  double mean_h_;
  double median_;
};

double inverse_stein_operator(const Distribution& d, const RealFn& h, double x,
                              const QuadratureConfig& config = {});

/// tau(x) f'(x) + (mu - x) f(x); zero outside the support.
double standardized_operator_apply(const Distribution& d, const SteinKernel& kernel, const RealFn& f,
                                   const RealFn& f_prime, double x);

/// g_h = T^{-1}(h - E h) / tau. Bounded by 1 in magnitude for Lipschitz-1 h.
class GhFunction {
 public:
  GhFunction(const Distribution& d, const SteinKernel& kernel, RealFn h, const QuadratureConfig& config = {});
  /// Throws KernelZero when tau(x) underflows.
  double operator()(double x) const;

 private:
  SteinKernel kernel_;
  InverseSteinOperator inverse_;
};

double g_h_eval(const Distribution& d, const SteinKernel& kernel, const RealFn& h, double x,
                const QuadratureConfig& config = {});

enum class DerivativeOrigin { Analytic, FiniteDifference };

/// pi_0 = p2 / p1 for nested supports (support of p2 inside that of p1).
class LikelihoodRatio {
 public:
  /// Throws SupportNotNested if an endpoint of p2 lies outside p1's support.
  LikelihoodRatio(Distribution base, Distribution target, const QuadratureConfig& config = {});

  const Distribution& base() const noexcept { return base_; }
  const Distribution& target() const noexcept { return target_; }

  /// pi_0(x); zero outside the support of the target.
  double ratio(double x) const;
  double log_ratio(double x) const;
  /// (log pi_0)'(x).
  double log_derivative(double x) const;
  /// pi_0'(x).
  double derivative(double x) const;
  /// pi_0'(x) p1(x), computed as p2(x) (log pi_0)'(x).
  double derivative_times_base(double x) const;
  DerivativeOrigin derivative_origin() const noexcept { return origin_; }

 private:
  Distribution base_;
  Distribution target_;
  QuadratureConfig config_;
  DerivativeOrigin origin_;
};

LikelihoodRatio likelihood_ratio(const Distribution& p1, const Distribution& p2,
                                 const QuadratureConfig& config = {});

struct TestFunction {
  std::string name;
  RealFn phi;
  RealFn phi_prime;
};

struct KernelIdentityReport {
  struct Entry {
    std::string name;
    double lhs;  ///< E[tau(X) phi'(X)]
    double rhs;  ///< E[(X - mu) phi(X)]
    double difference;  ///< |lhs - rhs| / max(1, |rhs|)
    bool passed;
  };
  std::vector<Entry> entries;
  double tolerance = 0.0;
  bool passed = true;
};

/// Checks E[tau(X) phi'(X)] = E[(X - mu) phi(X)] for each test function,
/// with the difference measured relative to max(1, |rhs|).
KernelIdentityReport verify_kernel_identity(const Distribution& d, const SteinKernel& kernel,
                                            std::span<const TestFunction> test_fns,
                                            const QuadratureConfig& config = {}, double tolerance = 1e-7);

}  // namespace steinbounds
