#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "steinbounds/bayes.hpp"
#include "steinbounds/bounds.hpp"
#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"
#include "steinbounds/oracle.hpp"

namespace steinbounds::io {

using nlohmann::json;

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnvVar = "STEIN_BOUNDS_CONFIG";

/// Distribution specs:
///   {"family": "normal", "mu": 0, "sigma": 1}
///   {"family": "beta", "alpha": 2, "beta": 3}
///   {"family": "gamma", "shape": 2, "scale": 1}
///   {"family": "exponential", "rate": 1}
///   {"family": "skew_normal", "location": 0, "scale": 1, "shape": 1}
///   {"family": "custom", "log_pdf": "-x^2/2", "support": ["-inf", "inf"]}
/// A custom density may give "pdf" instead of "log_pdf" and an optional
/// "window": [lo, hi] hint. All malformed input throws ParseError.
Distribution distribution_from_json(const json& spec, const QuadratureConfig& config = {});
/// Catalog parameters; custom laws serialise by name only.
json distribution_to_json(const Distribution& d);

struct BayesSpec {
  SamplingModel model;
  Prior prior;
};

/// {"model": {"kind": "normal", "sigma": 1, "n": 4, "xbar": 0.5},
///  "prior": {"kind": "normal", "mu": 0, "delta": 1}}
/// Model kinds: normal, binomial {n, y}, poisson {n, xbar}. Prior kinds:
/// flat, normal {mu, delta}, beta {alpha, beta}, jeffreys,
/// exponential {lambda}, custom {density, support}.
BayesSpec bayes_spec_from_json(const json& spec);
json bayes_spec_to_json(const BayesSpec& spec);

/// Overrides fields of `base` with those present in `j`; unknown keys
/// throw ParseError. The result is validated.
QuadratureConfig config_from_json(const json& j, QuadratureConfig base = {});
json config_to_json(const QuadratureConfig& config);

/// Defaults, overridden by the file named in STEIN_BOUNDS_CONFIG if set.
QuadratureConfig load_default_config();

json to_json(const ConditionReport& report);
/// An infinite upper bound is written as null.
json to_json(const BoundsResult& result);
json to_json(const OracleResult& result);
BoundsResult bounds_from_json(const json& j);

/// Throws ParseError when the file cannot be read or parsed.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// 17 significant digits, locale independent; "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_double(double v);

}  // namespace steinbounds::io
