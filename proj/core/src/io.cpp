#include "steinbounds/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "steinbounds/error.hpp"
#include "steinbounds/expression.hpp"

namespace steinbounds::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void allow_keys(const json& j, std::initializer_list<const char*> keys, const char* where) {
  if (!j.is_object()) parse_fail(std::string(where) + " must be a JSON object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) parse_fail(std::string(where) + ": unknown key '" + k + "'");
  }
}

double number(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) parse_fail(std::string(where) + ": missing '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) parse_fail(std::string(where) + ": '" + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) parse_fail(std::string(where) + ": missing '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) parse_fail(std::string(where) + ": '" + key + "' must be an integer");
  return v.get<int>();
}

std::string text(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    parse_fail(std::string(where) + ": '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

double bound_value(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  parse_fail("support endpoints must be numbers or \"inf\" / \"-inf\"");
}

SupportInterval support_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("support must be a two-element array");
  return SupportInterval(bound_value(j[0]), bound_value(j[1]));
}

json endpoint_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double nullable(const json& v) { return v.is_null() ? kInf : v.get<double>(); }

}  // namespace

Distribution distribution_from_json(const json& spec, const QuadratureConfig& config) {
  if (!spec.is_object()) parse_fail("distribution spec must be a JSON object");
  const std::string family = text(spec, "family", "distribution");
  const char* w = "distribution";
  if (family == "normal") {
    allow_keys(spec, {"family", "mu", "sigma"}, w);
    return Distribution::normal(number(spec, "mu", w), number(spec, "sigma", w));
  }
  if (family == "beta") {
    allow_keys(spec, {"family", "alpha", "beta"}, w);
    return Distribution::beta(number(spec, "alpha", w), number(spec, "beta", w));
  }
  if (family == "gamma") {
    allow_keys(spec, {"family", "shape", "scale"}, w);
    return Distribution::gamma(number(spec, "shape", w), number(spec, "scale", w));
  }
  if (family == "exponential") {
    allow_keys(spec, {"family", "rate"}, w);
    return Distribution::exponential(number(spec, "rate", w));
  }
  if (family == "skew_normal") {
    allow_keys(spec, {"family", "location", "scale", "shape"}, w);
    return Distribution::skew_normal(number(spec, "location", w), number(spec, "scale", w), number(spec, "shape", w),
                                     config);
  }
  if (family == "custom") {
    allow_keys(spec, {"family", "log_pdf", "pdf", "support", "window", "label"}, w);
    if (spec.contains("log_pdf") == spec.contains("pdf")) parse_fail("custom density needs exactly one of log_pdf, pdf");
    if (!spec.contains("support")) parse_fail("custom density needs a support");
    const SupportInterval support = support_from_json(spec.at("support"));
    std::optional<Window> hint;
    if (spec.contains("window")) {
      const json& h = spec.at("window");
      if (!h.is_array() || h.size() != 2 || !h[0].is_number() || !h[1].is_number()) {
        parse_fail("window must be [lo, hi]");
      }
      hint = Window{h[0].get<double>(), h[1].get<double>()};
    }
    const std::string label = spec.contains("label") ? text(spec, "label", w) : "Custom";
    if (spec.contains("log_pdf")) {
      const Expression e = Expression::parse(text(spec, "log_pdf", w));
      return Distribution::custom(e, support, config, hint, label);
    }
    const Expression e = Expression::parse(text(spec, "pdf", w));
    return Distribution::custom_pdf(e, support, config, hint, label);
  }
  parse_fail("unknown family '" + family + "'");
}

json distribution_to_json(const Distribution& d) {
  const std::vector<double>& p = d.params();
  switch (d.family()) {
    case Family::Normal: return {{"family", "normal"}, {"mu", p[0]}, {"sigma", p[1]}};
    case Family::Beta: return {{"family", "beta"}, {"alpha", p[0]}, {"beta", p[1]}};
    case Family::Gamma: return {{"family", "gamma"}, {"shape", p[0]}, {"scale", p[1]}};
    case Family::Exponential: return {{"family", "exponential"}, {"rate", p[0]}};
    case Family::SkewNormal:
      return {{"family", "skew_normal"}, {"location", p[0]}, {"scale", p[1]}, {"shape", p[2]}};
    case Family::Custom:
      return {{"family", "custom"},
              {"label", d.name()},
              {"support", {endpoint_to_json(d.support().lower()), endpoint_to_json(d.support().upper())}}};
  }
  return {};
}

BayesSpec bayes_spec_from_json(const json& spec) {
  allow_keys(spec, {"model", "prior"}, "bayes spec");
  if (!spec.contains("model") || !spec.contains("prior")) parse_fail("bayes spec needs 'model' and 'prior'");
  const json& m = spec.at("model");
  const json& p = spec.at("prior");
  const std::string mk = text(m, "kind", "model");
  const std::string pk = text(p, "kind", "prior");

  SamplingModel model;
  if (mk == "normal") {
    allow_keys(m, {"kind", "sigma", "n", "xbar"}, "model");
    model = SamplingModel::normal(number(m, "sigma", "model"), integer(m, "n", "model"), number(m, "xbar", "model"));
  } else if (mk == "binomial") {
    allow_keys(m, {"kind", "n", "y"}, "model");
    model = SamplingModel::binomial(integer(m, "n", "model"), integer(m, "y", "model"));
  } else if (mk == "poisson") {
    allow_keys(m, {"kind", "n", "xbar"}, "model");
    model = SamplingModel::poisson(integer(m, "n", "model"), number(m, "xbar", "model"));
  } else {
    parse_fail("unknown model kind '" + mk + "'");
  }

  if (pk == "flat") {
    allow_keys(p, {"kind"}, "prior");
    return {model, Prior::flat()};
  }
  if (pk == "normal") {
    allow_keys(p, {"kind", "mu", "delta"}, "prior");
    return {model, Prior::normal(number(p, "mu", "prior"), number(p, "delta", "prior"))};
  }
  if (pk == "beta") {
    allow_keys(p, {"kind", "alpha", "beta"}, "prior");
    return {model, Prior::beta(number(p, "alpha", "prior"), number(p, "beta", "prior"))};
  }
  if (pk == "jeffreys") {
    allow_keys(p, {"kind"}, "prior");
    return {model, Prior::jeffreys()};
  }
  if (pk == "exponential") {
    allow_keys(p, {"kind", "lambda"}, "prior");
    return {model, Prior::exponential(number(p, "lambda", "prior"))};
  }
  if (pk == "custom") {
    allow_keys(p, {"kind", "density", "support"}, "prior");
    const SupportInterval support =
        p.contains("support") ? support_from_json(p.at("support")) : model.parameter_space();
    return {model, Prior::custom(text(p, "density", "prior"), support)};
  }
  parse_fail("unknown prior kind '" + pk + "'");
}

json bayes_spec_to_json(const BayesSpec& spec) {
  json m{{"kind", std::string(to_string(spec.model.kind))}, {"n", spec.model.data.n}};
  switch (spec.model.kind) {
    case ModelKind::NormalKnownVariance:
      m["sigma"] = spec.model.sigma;
      m["xbar"] = spec.model.data.xbar;
      break;
    case ModelKind::Binomial: m["y"] = spec.model.data.y; break;
    case ModelKind::Poisson: m["xbar"] = spec.model.data.xbar; break;
  }
  const Prior& pr = spec.prior;
  json p{{"kind", std::string(to_string(pr.kind()))}};
  switch (pr.kind()) {
    case PriorKind::Normal:
      p["mu"] = pr.params()[0];
      p["delta"] = pr.params()[1];
      break;
    case PriorKind::Beta:
      p["alpha"] = pr.params()[0];
      p["beta"] = pr.params()[1];
      break;
    case PriorKind::Exponential: p["lambda"] = pr.params()[0]; break;
    case PriorKind::Custom:
      p["density"] = pr.expression();
      p["support"] = {endpoint_to_json(pr.support().lower()), endpoint_to_json(pr.support().upper())};
      break;
    case PriorKind::Flat:
    case PriorKind::Jeffreys: break;
  }
  return {{"model", m}, {"prior", p}};
}

QuadratureConfig config_from_json(const json& j, QuadratureConfig base) {
  allow_keys(j, {"abs_tol", "rel_tol", "max_depth", "tail_epsilon", "grid_points", "fd_step_scale", "seed"}, "config");
  const char* w = "config";
  if (j.contains("abs_tol")) base.abs_tol = number(j, "abs_tol", w);
  if (j.contains("rel_tol")) base.rel_tol = number(j, "rel_tol", w);
  if (j.contains("max_depth")) base.max_depth = integer(j, "max_depth", w);
  if (j.contains("tail_epsilon")) base.tail_epsilon = number(j, "tail_epsilon", w);
  if (j.contains("grid_points")) base.grid_points = integer(j, "grid_points", w);
  if (j.contains("fd_step_scale")) base.fd_step_scale = number(j, "fd_step_scale", w);
  if (j.contains("seed")) {
    const json& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) parse_fail("config: 'seed' must be a nonnegative integer");
    base.seed = j.at("seed").get<std::uint64_t>();
  }
  base.validate();
  return base;
}

json config_to_json(const QuadratureConfig& c) {
  return {{"abs_tol", c.abs_tol},           {"rel_tol", c.rel_tol},         {"max_depth", c.max_depth},
          {"tail_epsilon", c.tail_epsilon}, {"grid_points", c.grid_points}, {"fd_step_scale", c.fd_step_scale},
          {"seed", c.seed}};
}

QuadratureConfig load_default_config() {
  const char* path = std::getenv(kConfigEnvVar);
  if (path == nullptr || *path == '\0') return {};
  return config_from_json(read_json_file(path));
}

json to_json(const ConditionReport& r) {
  return {{"lower_endpoint_ok", r.lower_endpoint_ok},
          {"upper_endpoint_ok", r.upper_endpoint_ok},
          {"endpoint_limit_ok", r.endpoint_limit_ok()},
          {"integrability_ok", r.integrability_ok},
          {"warnings", r.warnings}};
}

json to_json(const BoundsResult& r) {
  json diag = json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = std::isfinite(v) ? json(v) : json(format_double(v));
  return {{"lower", r.lower},
          {"upper", r.upper_infinite || !std::isfinite(r.upper) ? json(nullptr) : json(r.upper)},
          {"upper_infinite", r.upper_infinite},
          {"exact", r.exact},
          {"method", std::string(to_string(r.method))},
          {"conditions", to_json(r.conditions)},
          {"diagnostics", diag}};
}

json to_json(const OracleResult& r) {
  return {{"value", r.value_cdf},
          {"value_cdf", r.value_cdf},
          {"value_quantile", r.value_quantile},
          {"agreement", r.agreement},
          {"error_cdf", r.error_cdf},
          {"error_quantile", r.error_quantile},
          {"converged", r.converged}};
}

BoundsResult bounds_from_json(const json& j) {
  try {
    BoundsResult r;
    r.lower = j.at("lower").get<double>();
    r.upper = nullable(j.at("upper"));
    r.upper_infinite = j.at("upper_infinite").get<bool>();
    r.exact = j.at("exact").get<bool>();
    const std::string m = j.at("method").get<std::string>();
    if (m == "stein_kernel") {
      r.method = BoundMethod::SteinKernel;
    } else if (m == "variance_bound") {
      r.method = BoundMethod::VarianceBound;
    } else if (m == "monotone_lr") {
      r.method = BoundMethod::MonotoneLR;
    } else {
      parse_fail("unknown method '" + m + "'");
    }
    const json& c = j.at("conditions");
    r.conditions.lower_endpoint_ok = c.at("lower_endpoint_ok").get<bool>();
    r.conditions.upper_endpoint_ok = c.at("upper_endpoint_ok").get<bool>();
    r.conditions.integrability_ok = c.at("integrability_ok").get<bool>();
    r.conditions.warnings = c.at("warnings").get<std::vector<std::string>>();
    for (const auto& [k, v] : j.at("diagnostics").items()) {
      r.diagnostics[k] = v.is_number() ? v.get<double>() : std::strtod(v.get<std::string>().c_str(), nullptr);
    }
    return r;
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed bounds report: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + path.string());
  out << content;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace steinbounds::io
