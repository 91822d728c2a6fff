#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"
#include "steinbounds/stein.hpp"

namespace steinbounds {

enum class BoundMethod { SteinKernel, VarianceBound, MonotoneLR };
std::string_view to_string(BoundMethod method) noexcept;

/// Numeric evidence for the sufficient conditions of the bound theorem.
/// Advisory only: it annotates a result and never blocks computation.
struct ConditionReport {
  /// pi0 p1 tau1 and p2 tau1 vanish when approaching the lower / upper
  /// endpoint of the target's support.
  bool lower_endpoint_ok = true;
  bool upper_endpoint_ok = true;
  /// |pi0'| p1 tau1 integrated to convergence.
  bool integrability_ok = true;
  std::vector<std::string> warnings;

  bool endpoint_limit_ok() const noexcept { return lower_endpoint_ok && upper_endpoint_ok; }
  bool all_ok() const noexcept { return endpoint_limit_ok() && integrability_ok; }
};

struct BoundsResult {
  double lower = 0.0;
  /// Meaningless when `upper_infinite` is set.
  double upper = 0.0;
  bool upper_infinite = false;
  bool exact = false;
  BoundMethod method = BoundMethod::SteinKernel;
  ConditionReport conditions;
  std::map<std::string, double> diagnostics;
};

/// lower = max(|E[pi0'(X1) tau1(X1)]|, |E X2 - E X1|),
/// upper = E[|pi0'(X1)| tau1(X1)], both by quadrature against p1.
/// Throws SupportNotNested. A divergent upper integral sets upper_infinite.
BoundsResult bounds_theorem(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config = {});

/// lower = |E X2 - E X1|, upper = sup |pi0'| Var X1. The supremum is taken
/// over a quantile grid, refined locally, plus sequences approaching each
/// endpoint; growth along those sequences sets upper_infinite.
BoundsResult variance_bound(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config = {});

/// sup |g| over `grid`, refined around the best grid point, and along
/// each sequence in `approaches`. +infinity when g is not finite somewhere
/// or keeps growing along a sequence past ten times the grid maximum.
double sup_abs_with_approach(const RealFn& g, std::vector<double> grid,
                             std::span<const std::vector<double>> approaches);

/// Twelve points approaching one endpoint of d's support (side -1 or +1):
/// geometric in the distance for a finite endpoint, doubling steps past the
/// window for an infinite one.
std::vector<double> endpoint_approach(const Distribution& d, int side);

/// sup |pi0'| as used by `variance_bound`; +infinity when unbounded.
double sup_abs_ratio_derivative(const LikelihoodRatio& lr, const QuadratureConfig& config = {});

enum class Monotonicity { Increasing, Decreasing, NonMonotone };
std::string_view to_string(Monotonicity m) noexcept;

struct MonotoneCheck {
  Monotonicity direction = Monotonicity::NonMonotone;
  std::vector<std::string> warnings;
};

/// Signs of pi0' on a quantile-spaced grid over the target's support, with
/// values inside +/-1e-12 counted as zero.
MonotoneCheck detect_monotone(const LikelihoodRatio& lr, const QuadratureConfig& config = {});

/// d_W = |E X2 - E X1| for likelihood-ratio ordered pairs, cross-checked
/// against E[|pi0'(X1)| tau1(X1)]. Disagreement beyond 1e-4 clears `exact`.
/// Throws NotMonotone when the ratio is not monotone.
BoundsResult exact_distance_monotone(const Distribution& p1, const Distribution& p2,
                                     const QuadratureConfig& config = {});

/// Monotone fast path when available, the kernel bounds otherwise.
BoundsResult best_bounds(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config = {});

ConditionReport check_conditions(const Distribution& p1, const Distribution& p2, const SteinKernel& kernel,
                                 const LikelihoodRatio& lr, const QuadratureConfig& config = {});

}  // namespace steinbounds
