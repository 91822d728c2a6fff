#pragma once

#include <cmath>
#include <limits>

namespace steinbounds {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Support of a univariate law. Infinite endpoints are never closed.
class SupportInterval {
 public:
  SupportInterval() = default;
  /// Throws InvalidParams when lower >= upper or an endpoint is NaN.
  SupportInterval(double lower, double upper, bool lower_closed = false, bool upper_closed = false);

  static SupportInterval real_line() { return {-kInf, kInf}; }
  static SupportInterval positive_half_line(bool closed = false) { return {0.0, kInf, closed, false}; }
  static SupportInterval unit_interval(bool closed = true) { return {0.0, 1.0, closed, closed}; }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  bool lower_closed() const noexcept { return lower_closed_; }
  bool upper_closed() const noexcept { return upper_closed_; }
  bool lower_finite() const noexcept { return std::isfinite(lower_); }
  bool upper_finite() const noexcept { return std::isfinite(upper_); }

  bool contains(double x) const noexcept;
  /// Strictly inside (lower, upper).
  bool interior(double x) const noexcept { return x > lower_ && x < upper_; }
  /// True when `other` lies within this interval (endpoint comparison).
  bool contains(const SupportInterval& other) const noexcept {
    return other.lower_ >= lower_ && other.upper_ <= upper_;
  }

  friend bool operator==(const SupportInterval&, const SupportInterval&) = default;

 private:
  double lower_ = -kInf;
  double upper_ = kInf;
  bool lower_closed_ = false;
  bool upper_closed_ = false;
};

/// Finite interval [lo, hi] used as an integration window.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
};

}  // namespace steinbounds
