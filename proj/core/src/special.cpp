#include "steinbounds/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

namespace steinbounds::special {
namespace {
constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;
constexpr double kAsymptoticSwitch = -30.0;

// log Phi(z) for z <= -30 via the Mills-ratio expansion; the first omitted
// term is below 2e-12 in relative size.
double log_cdf_asymptotic(double z) noexcept {
  const double r = 1.0 / (z * z);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return normal_log_pdf(z) - std::log(-z) + std::log(series);
}
}  // namespace

double normal_log_pdf(double z) noexcept { return -0.5 * z * z - kLogSqrt2Pi; }

double normal_pdf(double z) noexcept { return std::exp(normal_log_pdf(z)); }

double normal_cdf(double z) noexcept {
  if (std::isnan(z)) return z;
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double normal_log_cdf(double z) noexcept {
  if (std::isnan(z)) return z;
  if (z < kAsymptoticSwitch) return log_cdf_asymptotic(z);
  if (z > 5.0) return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
  return std::log(0.5 * std::erfc(-z * kInvSqrt2));
}

double normal_hazard_left(double z) noexcept {
  if (z < kAsymptoticSwitch) return std::exp(normal_log_pdf(z) - log_cdf_asymptotic(z));
  return normal_pdf(z) / normal_cdf(z);
}

double normal_quantile(double u) {
  if (u <= 0.0) return -std::numeric_limits<double>::infinity();
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

double log_add_exp(double a, double b) noexcept {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace steinbounds::special
