#pragma once

#include <vector>
#include <string>

#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"

namespace steinbounds {

/// Exponential tilt p2(x) = p1(x) exp(lambda1 x) / M1(lambda1) with
/// mean target_mean.
struct TiltSpec {
  Distribution base;
  double target_mean = 0.0;
  double lambda1 = 0.0;
  double mgf_at_lambda1 = 1.0;
  double log_mgf_at_lambda1 = 0.0;
};

struct TiltedDistribution {
  TiltSpec spec;
  Distribution tilted;
};

/// Solves (log M1)'(lambda1) = target_mean. The mgf domain is probed by
/// expanding t geometrically until the tilted density stops normalising,
/// then bisecting the boundary to 1e-6.
/// Throws MeanUnattainable when no root lies inside the mgf domain and
/// MgfDivergent when the mgf diverges at every probed t of the needed sign.
TiltedDistribution tilt_distribution(const Distribution& base, double target_mean,
                                     const QuadratureConfig& config = {});

/// The tilted law for a solved spec.
Distribution tilted_law(const TiltSpec& spec, const QuadratureConfig& config = {});

struct TiltDistance {
  /// |E X2 - E X1| through the monotone-ratio path.
  double distance = 0.0;
  /// |lambda1| E[tau1(X2)].
  double distance_kernel_form = 0.0;
  /// lambda1 mu2 - log M1(lambda1).
  double kl = 0.0;
  bool exact = false;
  std::vector<std::string> warnings;
};

TiltDistance tilt_distance_and_kl(const TiltSpec& spec, const QuadratureConfig& config = {});

}  // namespace steinbounds
