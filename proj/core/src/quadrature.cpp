#include "steinbounds/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace steinbounds {
namespace {

// 21-point Kronrod abscissae on [-1, 1] (non-negative half) and weights;
// the odd-indexed abscissae are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452616, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct WorkItem {
  Panel panel;
  int depth;
  bool operator<(const WorkItem& other) const { return panel.error < other.panel.error; }
};

}  // namespace

Panel kronrod21(const RealFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(center);
  double result_gauss = 0.0;
  double result_kronrod = fc * kWgk[10];
  double result_abs = std::abs(result_kronrod);
  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};

  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    const double sum = f1 + f2;
    result_kronrod += kWgk[j] * sum;
    result_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * sum;
  }

  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    result_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double value = result_kronrod * half;
  result_abs *= abs_half;
  result_asc *= abs_half;
  double error = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (result_abs > kTiny / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * result_abs, error);
  }
  if (!std::isfinite(value)) error = std::numeric_limits<double>::infinity();
  return {a, b, value, error};
}

IntegrationResult integrate(const RealFn& f, double a, double b, const QuadratureConfig& config,
                            const IntegrateOptions& options) {
  IntegrationResult out;
  if (!(a < b)) {
    out.converged = (a == b);
    return out;
  }

  std::vector<double> cuts{a};
  for (double x : options.breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<WorkItem> active;
  std::vector<Panel> settled;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = kronrod21(f, cuts[i], cuts[i + 1]);
    out.evaluations += 21;
    if (!std::isfinite(p.value)) {
      out.value = std::numeric_limits<double>::quiet_NaN();
      out.error = std::numeric_limits<double>::infinity();
      return out;
    }
    active.push({p, 0});
  }

  auto totals = [&]() {
    double value = 0.0;
    double error = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().panel.value;
      error += copy.top().panel.error;
      copy.pop();
    }
    for (const Panel& p : settled) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  double value = 0.0;
  double error = 0.0;
  {
    auto [v, e] = totals();
    value = v;
    error = e;
  }

  bool failed = false;
  while (!active.empty()) {
    const double tol = std::max(config.abs_tol, config.rel_tol * std::abs(value));
    if (error <= tol) break;
    if (static_cast<int>(active.size() + settled.size()) >= options.max_panels) break;

    WorkItem worst = active.top();
    active.pop();
    const Panel& p = worst.panel;
    const double mid = 0.5 * (p.lo + p.hi);
    const bool too_narrow =
        !(mid > p.lo && mid < p.hi) || (p.hi - p.lo) <= 4.0 * kEps * std::max(std::abs(p.lo), std::abs(p.hi));
    if (worst.depth >= config.max_depth || too_narrow) {
      settled.push_back(p);
      continue;
    }
    Panel left = kronrod21(f, p.lo, mid);
    Panel right = kronrod21(f, mid, p.hi);
    out.evaluations += 42;
    if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
      failed = true;
      break;
    }
    value += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    active.push({left, worst.depth + 1});
    active.push({right, worst.depth + 1});
  }

  if (failed) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.error = std::numeric_limits<double>::infinity();
    return out;
  }

  // Re-sum from scratch to shed the running-update drift.
  while (!active.empty()) {
    settled.push_back(active.top().panel);
    active.pop();
  }
  std::sort(settled.begin(), settled.end(), [](const Panel& l, const Panel& r) { return l.lo < r.lo; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : settled) {
    value += p.value;
    error += p.error;
  }
  out.value = value;
  out.error = error;
  out.converged = error <= std::max(config.abs_tol, config.rel_tol * std::abs(value));
  if (options.keep_panels) out.panels = std::move(settled);
  return out;
}

double find_tail_extent(const RealFn& log_f, double start, int dir, double step, double log_floor,
                        double limit, int max_doublings) {
  double s = step;
  for (int i = 0; i < max_doublings; ++i) {
    const double x = start + dir * s;
    if ((dir > 0 && x >= limit) || (dir < 0 && x <= limit)) return limit;
    const double lf = log_f(x);
    if (std::isnan(lf) || lf < log_floor) return x;
    s *= 2.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double bisect_root(const RealFn& f, double lo, double hi, double x_tol, int max_iter) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> find_sign_changes(const RealFn& f, double lo, double hi, int scan_points, std::size_t max_roots,
                                      bool* truncated) {
  std::vector<double> roots;
  if (truncated) *truncated = false;
  if (!(hi > lo) || scan_points < 2) return roots;
  const double h = (hi - lo) / (scan_points - 1);
  const double x_tol = std::max(1e-13, 1e-12 * (std::abs(lo) + std::abs(hi)));
  double x_prev = lo;
  double f_prev = f(lo);
  bool zero_recorded = false;
  for (int i = 1; i < scan_points; ++i) {
    const double x = i + 1 == scan_points ? hi : lo + i * h;
    const double fx = f(x);
    if (!std::isfinite(fx)) continue;
    if (!std::isfinite(f_prev) || f_prev == 0.0) {
      x_prev = x;
      f_prev = fx;
      continue;
    }
    double root = std::numeric_limits<double>::quiet_NaN();
    if (fx == 0.0) {
      if (!zero_recorded) root = x;
      zero_recorded = true;
    } else {
      if (!zero_recorded && (f_prev < 0.0) != (fx < 0.0)) root = bisect_root(f, x_prev, x, x_tol);
      zero_recorded = false;
      x_prev = x;
      f_prev = fx;
    }
    if (!std::isnan(root) && root > lo && root < hi) {
      if (roots.size() == max_roots) {
        if (truncated) *truncated = true;
        return roots;
      }
      roots.push_back(root);
    }
  }
  return roots;
}

}  // namespace steinbounds
