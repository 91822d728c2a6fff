#include "steinbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "steinbounds/error.hpp"
#include "steinbounds/quadrature.hpp"

namespace steinbounds {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kApproachPoints = 12;
constexpr double kEndpointDecay = 1e-8;
constexpr double kMonotoneBand = 1e-12;
constexpr double kCrossCheckTol = 1e-4;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct KernelIntegrals {
  IntegrationResult signed_part;
  IntegrationResult abs_part;
};

// Integrals of pi0' p1 tau1 and |pi0'| p1 tau1 over the window shared by
// both laws, split at the means and at the zeros of pi0'.
KernelIntegrals kernel_integrals(const Distribution& p1, const Distribution& p2, const LikelihoodRatio& lr,
                                 const SteinKernel& tau, const QuadratureConfig& config) {
  const Window w = union_window(p1, p2, p2.support());
  std::vector<double> cuts = find_sign_changes([&](double x) { return lr.log_derivative(x); }, w.lo, w.hi);
  cuts.push_back(p1.mean());
  cuts.push_back(p2.mean());
  std::erase_if(cuts, [&](double c) { return !(c > w.lo && c < w.hi); });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double x) {
    const double d = lr.derivative_times_base(x);
    if (d == 0.0) return 0.0;
    try {
      return d * tau(x);
    } catch (const Error&) {
      return kNaN;
    }
  };
  IntegrateOptions opts;
  opts.breakpoints = cuts;
  KernelIntegrals out;
  out.signed_part = integrate(integrand, w.lo, w.hi, config, opts);
  out.abs_part = integrate([&](double x) { return std::abs(integrand(x)); }, w.lo, w.hi, config, opts);
  return out;
}

// Points approaching one endpoint of the target's support: geometric in
// the distance for a finite endpoint, doubling steps beyond the window
// for an infinite one.
std::vector<double> approach_points(const Distribution& p2, int side) {
  const SupportInterval& s = p2.support();
  const double edge = side < 0 ? s.lower() : s.upper();
  std::vector<double> xs;
  xs.reserve(kApproachPoints);
  if (std::isfinite(edge)) {
    const double m = p2.quantile(0.5);
    for (int k = 1; k <= kApproachPoints; ++k) xs.push_back(edge + (m - edge) * std::pow(10.0, -k));
  } else {
    const double start = side < 0 ? p2.window().lo : p2.window().hi;
    for (int k = 0; k < kApproachPoints; ++k) xs.push_back(start + side * p2.sd() * std::ldexp(1.0, k));
  }
  return xs;
}

// max(pi0 p1 tau1, p2 tau1) at x; NaN when tau1 cannot be evaluated.
double boundary_term(const Distribution& p1, const Distribution& p2, const SteinKernel& tau,
                     const LikelihoodRatio& lr, double x) {
  const double lp2 = p2.log_pdf(x);
  const double lpi = lr.log_ratio(x) + p1.log_pdf(x);
  const double mass = std::max(std::exp(lp2), std::isnan(lpi) ? 0.0 : std::exp(lpi));
  if (mass == 0.0) return 0.0;
  try {
    return mass * std::abs(tau(x));
  } catch (const Error&) {
    return kNaN;
  }
}

ConditionReport endpoint_conditions(const Distribution& p1, const Distribution& p2, const SteinKernel& tau,
                                    const LikelihoodRatio& lr) {
  ConditionReport report;
  for (int side : {-1, +1}) {
    const std::vector<double> xs = approach_points(p2, side);
    bool finite = true;
    double last = 0.0;
    for (double x : xs) {
      last = boundary_term(p1, p2, tau, lr, x);
      finite = finite && std::isfinite(last);
    }
    const bool ok = finite && last < kEndpointDecay;
    const char* which = side < 0 ? "lower" : "upper";
    if (!ok) {
      report.warnings.push_back(std::string("p2 tau1 does not vanish at the ") + which + " endpoint (last value " +
                                fmt(last) + ")");
    }
    (side < 0 ? report.lower_endpoint_ok : report.upper_endpoint_ok) = ok;
  }
  return report;
}

// Rounding error of a central difference of log pi0 at x, scaled to pi0';
// zero when the derivative is analytic.
double fd_roundoff(const LikelihoodRatio& lr, double x, const QuadratureConfig& config) {
  if (lr.derivative_origin() == DerivativeOrigin::Analytic) return 0.0;
  const double h = fd_step(x, lr.target().support(), config);
  const double scale = std::abs(lr.base().log_pdf(x)) + std::abs(lr.target().log_pdf(x)) + 1.0;
  return 8.0 * std::numeric_limits<double>::epsilon() * scale / h * lr.ratio(x);
}

void annotate_order(BoundsResult& r) {
  if (!r.upper_infinite && r.upper < r.lower - 1e-8) {
    r.conditions.warnings.push_back("upper bound " + fmt(r.upper) + " is below lower bound " + fmt(r.lower) +
                                    "; the theorem's conditions do not hold");
  }
}

}  // namespace

std::string_view to_string(BoundMethod method) noexcept {
  switch (method) {
    case BoundMethod::SteinKernel: return "stein_kernel";
    case BoundMethod::VarianceBound: return "variance_bound";
    case BoundMethod::MonotoneLR: return "monotone_lr";
  }
  return "unknown";
}

std::string_view to_string(Monotonicity m) noexcept {
  switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::NonMonotone: return "non_monotone";
  }
  return "unknown";
}

BoundsResult bounds_theorem(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  const LikelihoodRatio lr(p1, p2, config);
  const SteinKernel tau(p1, config);
  const KernelIntegrals k = kernel_integrals(p1, p2, lr, tau, config);
  const double mean_diff = std::abs(p2.mean() - p1.mean());

  BoundsResult r;
  r.method = BoundMethod::SteinKernel;
  r.lower = std::max(std::abs(k.signed_part.value), mean_diff);
  if (!std::isfinite(r.lower)) r.lower = mean_diff;
  r.upper_infinite = !k.abs_part.converged || !std::isfinite(k.abs_part.value);
  r.upper = r.upper_infinite ? kInf : k.abs_part.value;
  r.conditions = endpoint_conditions(p1, p2, tau, lr);
  r.conditions.integrability_ok = !r.upper_infinite;
  if (r.upper_infinite) r.conditions.warnings.push_back("E[|pi0'| tau1] did not converge");
  if (!r.conditions.endpoint_limit_ok()) {
    // Without the boundary limits the kernel identity fails; only the mean
    // difference remains a lower bound.
    r.lower = mean_diff;
    r.conditions.warnings.push_back("lower bound falls back to |E X2 - E X1|");
  }
  r.diagnostics = {{"signed_integral", k.signed_part.value},
                   {"signed_integral_error", k.signed_part.error},
                   {"upper_error", k.abs_part.error},
                   {"mean_difference", mean_diff},
                   {"kernel_numeric", tau.origin() == KernelOrigin::Numeric ? 1.0 : 0.0}};
  annotate_order(r);
  return r;
}

double sup_abs_with_approach(const RealFn& g, std::vector<double> grid,
                             std::span<const std::vector<double>> approaches) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = std::abs(g(grid[i]));
    if (!std::isfinite(v)) return kInf;
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  if (best > 0.0 && grid.size() >= 3) {
    const double a = grid[arg == 0 ? 0 : arg - 1];
    const double b = grid[std::min(arg + 1, grid.size() - 1)];
    const auto m = boost::math::tools::brent_find_minima([&](double x) { return -std::abs(g(x)); }, a, b, 40);
    if (std::isfinite(m.second)) best = std::max(best, -m.second);
  }
  for (const std::vector<double>& seq : approaches) {
    std::vector<double> vals;
    for (double x : seq) {
      const double v = std::abs(g(x));
      if (!std::isfinite(v)) return kInf;
      vals.push_back(v);
    }
    if (vals.empty()) continue;
    const std::size_t m = vals.size();
    const bool growing = m >= 3 && vals[m - 1] > vals[m - 2] && vals[m - 2] > vals[m - 3];
    if (growing && vals[m - 1] > 10.0 * std::max(best, vals[0])) return kInf;
    best = std::max(best, *std::max_element(vals.begin(), vals.end()));
  }
  return best;
}

std::vector<double> endpoint_approach(const Distribution& d, int side) { return approach_points(d, side); }

double sup_abs_ratio_derivative(const LikelihoodRatio& lr, const QuadratureConfig& config) {
  const Distribution& p2 = lr.target();
  std::vector<double> xs;
  const int n = std::max(config.grid_points, 3);
  xs.reserve(2 * n);
  for (int i = 0; i < n; ++i) xs.push_back(p2.quantile((i + 0.5) / n));
  const Window w = union_window(lr.base(), p2, p2.support());
  for (int i = 1; i < n - 1; ++i) xs.push_back(w.lo + w.width() * i / (n - 1));
  const std::vector<std::vector<double>> approaches = {approach_points(p2, -1), approach_points(p2, +1)};
  return sup_abs_with_approach([&](double x) { return lr.derivative(x); }, std::move(xs), approaches);
}

BoundsResult variance_bound(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  const LikelihoodRatio lr(p1, p2, config);
  const double sup = sup_abs_ratio_derivative(lr, config);
  BoundsResult r;
  r.method = BoundMethod::VarianceBound;
  r.lower = std::abs(p2.mean() - p1.mean());
  r.upper_infinite = !std::isfinite(sup);
  r.upper = r.upper_infinite ? kInf : sup * p1.variance();
  r.conditions.integrability_ok = !r.upper_infinite;
  if (r.upper_infinite) r.conditions.warnings.push_back("pi0' is unbounded");
  r.diagnostics = {{"sup_abs_ratio_derivative", sup}, {"variance_p1", p1.variance()}};
  annotate_order(r);
  return r;
}

MonotoneCheck detect_monotone(const LikelihoodRatio& lr, const QuadratureConfig& config) {
  const Distribution& p2 = lr.target();
  const int n = std::max(config.grid_points, 3);
  bool pos = false;
  bool neg = false;
  for (int i = 0; i < n && !(pos && neg); ++i) {
    const double x = p2.quantile((i + 0.5) / n);
    const double d = lr.derivative(x);
    const double band = std::max(kMonotoneBand, fd_roundoff(lr, x, config));
    if (d > band) pos = true;
    if (d < -band) neg = true;
  }
  // pi0 is zero outside the target's support, so an endpoint of that
  // support lying inside the base's support is a jump: upwards at the
  // lower end, downwards at the upper end.
  const SupportInterval& s1 = lr.base().support();
  const SupportInterval& s2 = p2.support();
  if (s2.lower() > s1.lower() && lr.ratio(approach_points(p2, -1).back()) > kMonotoneBand) pos = true;
  if (s2.upper() < s1.upper() && lr.ratio(approach_points(p2, +1).back()) > kMonotoneBand) neg = true;

  MonotoneCheck out;
  if (pos && neg) {
    out.direction = Monotonicity::NonMonotone;
  } else if (neg) {
    out.direction = Monotonicity::Decreasing;
  } else {
    out.direction = Monotonicity::Increasing;
    if (!pos) out.warnings.push_back("pi0' vanishes on the whole grid; the ratio is constant");
  }
  return out;
}

BoundsResult exact_distance_monotone(const Distribution& p1, const Distribution& p2,
                                     const QuadratureConfig& config) {
  const LikelihoodRatio lr(p1, p2, config);
  MonotoneCheck mono = detect_monotone(lr, config);
  if (mono.direction == Monotonicity::NonMonotone) {
    throw Error(ErrorCode::NotMonotone, "likelihood ratio of " + p2.name() + " to " + p1.name() +
                                            " is not monotone");
  }
  const SteinKernel tau(p1, config);
  const KernelIntegrals k = kernel_integrals(p1, p2, lr, tau, config);
  const double value = std::abs(p2.mean() - p1.mean());
  const double cross = k.abs_part.value;

  BoundsResult r;
  r.method = BoundMethod::MonotoneLR;
  r.lower = value;
  r.upper = value;
  r.exact = k.abs_part.converged && std::abs(cross - value) <= kCrossCheckTol;
  r.conditions = endpoint_conditions(p1, p2, tau, lr);
  r.conditions.integrability_ok = k.abs_part.converged;
  r.conditions.warnings.insert(r.conditions.warnings.end(), mono.warnings.begin(), mono.warnings.end());
  if (!r.exact) {
    r.conditions.warnings.push_back("E[|pi0'| tau1] = " + fmt(cross) + " disagrees with |E X2 - E X1| = " +
                                    fmt(value));
    if (std::isfinite(cross)) r.upper = std::max(value, cross);
  }
  r.diagnostics = {{"mean_difference", value},
                   {"kernel_expression", cross},
                   {"increasing", mono.direction == Monotonicity::Increasing ? 1.0 : 0.0}};
  return r;
}

BoundsResult best_bounds(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  const LikelihoodRatio lr(p1, p2, config);
  if (detect_monotone(lr, config).direction != Monotonicity::NonMonotone) {
    return exact_distance_monotone(p1, p2, config);
  }
  return bounds_theorem(p1, p2, config);
}

ConditionReport check_conditions(const Distribution& p1, const Distribution& p2, const SteinKernel& kernel,
                                 const LikelihoodRatio& lr, const QuadratureConfig& config) {
  ConditionReport report = endpoint_conditions(p1, p2, kernel, lr);
  const KernelIntegrals k = kernel_integrals(p1, p2, lr, kernel, config);
  report.integrability_ok = k.abs_part.converged && std::isfinite(k.abs_part.value);
  if (!report.integrability_ok) report.warnings.push_back("E[|pi0'| tau1] did not converge");
  return report;
}

}  // namespace steinbounds
