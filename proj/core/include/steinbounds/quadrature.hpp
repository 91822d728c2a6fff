#pragma once

#include <functional>
#include <span>
#include <vector>

#include "steinbounds/config.hpp"
#include "steinbounds/support.hpp"

namespace steinbounds {

using RealFn = std::function<double(double)>;

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int evaluations = 0;
  /// Final partition, sorted by `lo`. Only filled when requested.
  std::vector<Panel> panels;
};

struct IntegrateOptions {
  /// Extra split points strictly inside (a, b).
  std::span<const double> breakpoints = {};
  bool keep_panels = false;
  /// Hard cap on the number of subintervals.
  int max_panels = 4000;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on a finite
/// interval. The rule is open, so the integrand is never evaluated at `a`
/// or `b`. A non-finite integrand value marks the result as not converged.
IntegrationResult integrate(const RealFn& f, double a, double b, const QuadratureConfig& config,
                            const IntegrateOptions& options = {});

/// One application of the 21-point Kronrod rule; `error` is the
/// Gauss/Kronrod difference estimate.
Panel kronrod21(const RealFn& f, double a, double b);

/// Walks from `start` in direction `dir` (+1 or -1) with doubling steps,
/// starting at `step`, until `log_f` drops below `log_floor` or `limit` is
/// reached. Returns the first such point, clamped to `limit`; returns NaN
/// when `max_doublings` is exhausted without reaching either.
double find_tail_extent(const RealFn& log_f, double start, int dir, double step, double log_floor,
                        double limit, int max_doublings = 64);

/// Bisection on a bracket [lo, hi] with f(lo) and f(hi) of opposite sign.
double bisect_root(const RealFn& f, double lo, double hi, double x_tol, int max_iter = 200);

/// Zeros of f on [lo, hi]: sign changes on an `scan_points` uniform grid,
/// each refined by bisection. Returns at most `max_roots` points, sorted;
/// `truncated` is set when more were found.
std::vector<double> find_sign_changes(const RealFn& f, double lo, double hi, int scan_points = 257,
                                      std::size_t max_roots = 32, bool* truncated = nullptr);

}  // namespace steinbounds
