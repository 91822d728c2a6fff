#pragma once

#include <cstdint>
#include <string_view>

namespace steinbounds {

std::string_view version() noexcept;

/// Numeric defaults shared by every module. All quadrature, truncation,
/// finite-difference and grid settings are read from here.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  /// Maximum bisection depth of any subinterval in adaptive quadrature.
  int max_depth = 60;
  /// Tail probability cut from each side of an infinite support.
  double tail_epsilon = 1e-12;
  int grid_points = 1025;
  double fd_step_scale = 1e-6;
  std::uint64_t seed = 0;

  /// Throws InvalidParams unless all fields are positive and
  /// tail_epsilon < 1e-3.
  void validate() const;

  /// Same settings with both tolerances multiplied by `factor`.
  QuadratureConfig scaled(double factor) const;
};

}  // namespace steinbounds
