#include "steinbounds/config.hpp"

#include <cmath>

#include "steinbounds/error.hpp"

#ifndef STEINBOUNDS_VERSION
#define STEINBOUNDS_VERSION "0.0.0"
#endif

namespace steinbounds {

std::string_view version() noexcept { return STEINBOUNDS_VERSION; }

void QuadratureConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(abs_tol) || !positive(rel_tol)) throw Error(ErrorCode::InvalidParams, "tolerances must be positive");
  if (max_depth <= 0) throw Error(ErrorCode::InvalidParams, "max_depth must be positive");
  if (!positive(tail_epsilon) || tail_epsilon >= 1e-3) {
    throw Error(ErrorCode::InvalidParams, "tail_epsilon must lie in (0, 1e-3)");
  }
  if (grid_points <= 2) throw Error(ErrorCode::InvalidParams, "grid_points must exceed 2");
  if (!positive(fd_step_scale)) throw Error(ErrorCode::InvalidParams, "fd_step_scale must be positive");
}

QuadratureConfig QuadratureConfig::scaled(double factor) const {
  QuadratureConfig out = *this;
  out.abs_tol *= factor;
  out.rel_tol *= factor;
  return out;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::NaNDensity: return "NaNDensity";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::KernelUnstable: return "KernelUnstable";
    case ErrorCode::NonIntegrableTestFunction: return "NonIntegrableTestFunction";
    case ErrorCode::KernelZero: return "KernelZero";
    case ErrorCode::SupportNotNested: return "SupportNotNested";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::MeanUnattainable: return "MeanUnattainable";
    case ErrorCode::MgfDivergent: return "MgfDivergent";
    case ErrorCode::ImproperPosterior: return "ImproperPosterior";
    case ErrorCode::InvalidData: return "InvalidData";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace steinbounds
