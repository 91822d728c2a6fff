#pragma once

namespace steinbounds::special {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2OverPi = 0.797884560802865355879892119868763737;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405617639;

double normal_log_pdf(double z) noexcept;
double normal_pdf(double z) noexcept;
double normal_cdf(double z) noexcept;
/// log Phi(z), accurate far into the left tail.
double normal_log_cdf(double z) noexcept;
/// phi(z) / Phi(z) without overflow or underflow for very negative z.
double normal_hazard_left(double z) noexcept;
double normal_quantile(double u);

/// log(exp(a) + exp(b)).
double log_add_exp(double a, double b) noexcept;

}  // namespace steinbounds::special
