#include "steinbounds/tilt.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

#include <boost/math/tools/roots.hpp>

#include "steinbounds/bounds.hpp"
#include "steinbounds/error.hpp"
#include "steinbounds/stein.hpp"

namespace steinbounds {
namespace {

constexpr double kDomainTol = 1e-6;
constexpr double kMeanTol = 1e-7;
constexpr int kMaxExpansions = 60;

Distribution make_tilt(const Distribution& base, double t, const QuadratureConfig& config) {
  return Distribution::custom([base, t](double x) { return base.log_pdf(x) + t * x; }, base.support(), config,
                              base.window(), "Tilt(" + base.name() + ")");
}

// Tilted law at t, or nullopt when the mgf diverges there.
std::optional<Distribution> try_tilt(const Distribution& base, double t, const QuadratureConfig& config) {
  try {
    return make_tilt(base, t, config);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonIntegrable) return std::nullopt;
    throw;
  }
}

}  // namespace

Distribution tilted_law(const TiltSpec& spec, const QuadratureConfig& config) {
  if (spec.lambda1 == 0.0) return spec.base;
  return make_tilt(spec.base, spec.lambda1, config);
}

TiltedDistribution tilt_distribution(const Distribution& base, double target_mean, const QuadratureConfig& config) {
  if (!std::isfinite(target_mean)) throw Error(ErrorCode::InvalidParams, "target mean must be finite");
  const double mu = base.mean();
  TiltSpec spec{base, target_mean, 0.0, 1.0, 0.0};
  if (std::abs(target_mean - mu) <= 1e-12 * (1.0 + std::abs(mu))) return {spec, base};
  if (!base.support().interior(target_mean)) {
    throw Error(ErrorCode::MeanUnattainable, "target mean lies outside the support of " + base.name());
  }

  const int dir = target_mean > mu ? 1 : -1;
  auto gap = [&](const Distribution& d) { return dir * (d.mean() - target_mean); };

  double t_in = 0.0;
  double t_out = dir * 0.5 / base.sd();
  bool bracketed = false;
  for (int i = 0; i < kMaxExpansions; ++i) {
    const auto d = try_tilt(base, t_out, config);
    if (!d) {
      // Walk the divergence boundary inward; the mean must be reached
      // strictly inside the domain.
      double lo = t_in;
      double hi = t_out;
      while (std::abs(hi - lo) > kDomainTol) {
        const double mid = 0.5 * (lo + hi);
        const auto dm = try_tilt(base, mid, config);
        if (!dm) {
          hi = mid;
        } else if (gap(*dm) >= 0.0) {
          hi = mid;
          bracketed = true;
          break;
        } else {
          lo = mid;
        }
      }
      if (!bracketed) {
        if (std::abs(lo) <= kDomainTol) {
          throw Error(ErrorCode::MgfDivergent, "mgf of " + base.name() + " diverges on the required side of 0");
        }
        throw Error(ErrorCode::MeanUnattainable, "target mean is beyond the range of tilted means");
      }
      t_in = lo;
      t_out = hi;
      break;
    }
    if (gap(*d) >= 0.0) {
      bracketed = true;
      break;
    }
    t_in = t_out;
    t_out *= 2.0;
  }
  if (!bracketed) throw Error(ErrorCode::MeanUnattainable, "tilted means do not reach the target");

  auto f = [&](double t) {
    if (t == 0.0) return mu - target_mean;
    return make_tilt(base, t, config).mean() - target_mean;
  };
  std::uintmax_t iters = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(f, std::min(t_in, t_out), std::max(t_in, t_out),
                                                        boost::math::tools::eps_tolerance<double>(50), iters);
  spec.lambda1 = 0.5 * (a + b);
  Distribution tilted = make_tilt(base, spec.lambda1, config);
  if (std::abs(tilted.mean() - target_mean) > kMeanTol * (1.0 + std::abs(target_mean))) {
    throw Error(ErrorCode::NonConvergent, "tilt root-find missed the target mean");
  }
  spec.log_mgf_at_lambda1 = tilted.log_normalizer();
  spec.mgf_at_lambda1 = std::exp(spec.log_mgf_at_lambda1);
  return {spec, tilted};
}

TiltDistance tilt_distance_and_kl(const TiltSpec& spec, const QuadratureConfig& config) {
  const Distribution tilted = tilted_law(spec, config);
  TiltDistance out;
  out.kl = spec.lambda1 * spec.target_mean - spec.log_mgf_at_lambda1;
  if (spec.lambda1 == 0.0) {
    out.exact = true;
    return out;
  }
  const BoundsResult r = exact_distance_monotone(spec.base, tilted, config);
  out.distance = r.lower;
  out.exact = r.exact;
  out.warnings = r.conditions.warnings;

  const SteinKernel tau(spec.base, config);
  out.distance_kernel_form = std::abs(spec.lambda1) * expectation(tilted, [&](double x) { return tau(x); }, config).value;

  if (spec.base.family() == Family::Gamma || spec.base.family() == Family::Exponential) {
    const double closed = std::abs(spec.target_mean - spec.base.mean());
    if (std::abs(closed - out.distance) > 1e-6) {
      out.exact = false;
      out.warnings.push_back("distance disagrees with |mu2 - lambda k|");
    }
  }
  return out;
}

}  // namespace steinbounds
