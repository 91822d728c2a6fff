#include "steinbounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "steinbounds/quadrature.hpp"

namespace steinbounds {
namespace {

constexpr double kUEdge = 1e-9;
constexpr double kAgreementTol = 1e-5;

// Integrates |f| on [a, b], splitting at the zeros of f unless there are
// too many of them to track.
IntegrationResult integrate_abs(const RealFn& f, double a, double b, const QuadratureConfig& config) {
  bool truncated = false;
  const std::vector<double> roots = find_sign_changes(f, a, b, 257, 32, &truncated);
  IntegrateOptions opts;
  if (!truncated) opts.breakpoints = roots;
  return integrate([&](double x) { return std::abs(f(x)); }, a, b, config, opts);
}

}  // namespace

OracleValue oracle_cdf(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  const double lo = std::min(p1.window().lo, p2.window().lo);
  const double hi = std::max(p1.window().hi, p2.window().hi);
  const IntegrationResult r = integrate_abs([&](double x) { return p1.cdf(x) - p2.cdf(x); }, lo, hi, config);

  // Beyond the window each cdf tail is at most tail_epsilon in mass; the
  // area it leaves out is of the order of mass times spread.
  const double spread = p1.sd() + p2.sd();
  double tail = 0.0;
  if (!(p1.support().lower_finite() && p2.support().lower_finite())) tail += (p1.cdf(lo) + p2.cdf(lo)) * spread;
  if (!(p1.support().upper_finite() && p2.support().upper_finite())) {
    tail += (2.0 - p1.cdf(hi) - p2.cdf(hi)) * spread;
  }
  return {r.value, r.error + tail, r.converged && std::isfinite(r.value)};
}

OracleValue oracle_quantile(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  auto diff = [&](double u) { return p1.quantile(u) - p2.quantile(u); };
  const IntegrationResult r = integrate_abs(diff, kUEdge, 1.0 - kUEdge, config);
  // |Q1 - Q2| is monotone towards each end for the laws in scope, so the
  // edge value times the edge width bounds each omitted piece up to a
  // logarithmic factor.
  const double tail = kUEdge * (std::abs(diff(kUEdge)) + std::abs(diff(1.0 - kUEdge)));
  return {r.value, r.error + tail, r.converged && std::isfinite(r.value)};
}

OracleResult oracle(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config) {
  const OracleValue c = oracle_cdf(p1, p2, config);
  const OracleValue q = oracle_quantile(p1, p2, config);
  OracleResult out;
  out.value_cdf = c.value;
  out.value_quantile = q.value;
  out.error_cdf = c.error;
  out.error_quantile = q.error;
  out.agreement = std::abs(c.value - q.value);
  out.converged = c.converged && q.converged && out.agreement <= kAgreementTol;
  return out;
}

}  // namespace steinbounds
