#pragma once

#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"

namespace steinbounds {

/// One quadrature estimate of d_W; `error` includes the truncated tails.
struct OracleValue {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

struct OracleResult {
  double value_cdf = 0.0;
  double value_quantile = 0.0;
  double agreement = 0.0;
  double error_cdf = 0.0;
  double error_quantile = 0.0;
  /// Both forms converged and agree to 1e-5.
  bool converged = false;
};

/// d_W = int |F1 - F2| dx over the union of the two windows, split at the
/// crossings of F1 - F2.
OracleValue oracle_cdf(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config = {});

/// d_W = int_0^1 |Q1(u) - Q2(u)| du over [1e-9, 1 - 1e-9].
OracleValue oracle_quantile(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config = {});

OracleResult oracle(const Distribution& p1, const Distribution& p2, const QuadratureConfig& config = {});

}  // namespace steinbounds
