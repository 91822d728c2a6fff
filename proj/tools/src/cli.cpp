#include "steinbounds_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steinbounds/bayes.hpp"
#include "steinbounds/bounds.hpp"
#include "steinbounds/error.hpp"
#include "steinbounds/io.hpp"
#include "steinbounds/oracle.hpp"
#include "steinbounds/stein.hpp"
#include "steinbounds/tilt.hpp"
#include "steinbounds/verify.hpp"

namespace steinbounds::cli {
namespace {

using io::json;

struct Common {
  std::string out;
  /// Empty means the subcommand's default.
  std::string format;
  std::string config_file;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  std::string body;
  bool numeric_failure = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write the report to this file instead of standard output");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--config", c.config_file, "JSON file with quadrature settings");
  cmd->add_option("--abs-tol", c.abs_tol, "Absolute quadrature tolerance");
  cmd->add_option("--rel-tol", c.rel_tol, "Relative quadrature tolerance");
  cmd->add_option("--seed", c.seed, "Seed for randomized suites");
}

QuadratureConfig resolve_config(const Common& c) {
  QuadratureConfig cfg = io::load_default_config();
  if (!c.config_file.empty()) cfg = io::config_from_json(io::read_json_file(c.config_file), cfg);
  if (c.abs_tol) cfg.abs_tol = *c.abs_tol;
  if (c.rel_tol) cfg.rel_tol = *c.rel_tol;
  if (c.seed) cfg.seed = *c.seed;
  cfg.validate();
  return cfg;
}

json envelope(const std::string& command, const QuadratureConfig& cfg) {
  return {{"command", command}, {"version", std::string(version())}, {"config", io::config_to_json(cfg)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const std::string& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + "\n";
}

std::string num(double v) { return io::format_double(v); }

void require_json(const Common& c, const char* command) {
  if (!c.format.empty() && c.format != "json") throw UsageError(std::string(command) + " only emits json");
}

bool result_failed(const BoundsResult& r) { return r.upper_infinite || !r.conditions.integrability_ok; }

Outcome bound_cmd(const Common& c, const std::string& p1_file, const std::string& p2_file, const std::string& method,
                  bool with_oracle) {
  require_json(c, "bound");
  const QuadratureConfig cfg = resolve_config(c);
  const json j1 = io::read_json_file(p1_file);
  const json j2 = io::read_json_file(p2_file);
  const Distribution p1 = io::distribution_from_json(j1, cfg);
  const Distribution p2 = io::distribution_from_json(j2, cfg);

  BoundsResult r;
  if (method == "theorem") {
    r = bounds_theorem(p1, p2, cfg);
  } else if (method == "variance") {
    r = variance_bound(p1, p2, cfg);
  } else if (method == "monotone") {
    r = exact_distance_monotone(p1, p2, cfg);
  } else {
    r = best_bounds(p1, p2, cfg);
  }
  json report = envelope("bound", cfg);
  report.update(io::to_json(r));
  report["inputs"] = {{"p1", j1}, {"p2", j2}};
  bool failed = result_failed(r);
  if (with_oracle) {
    const OracleResult o = oracle(p1, p2, cfg);
    report["oracle"] = io::to_json(o);
    failed = failed || !o.converged;
  }
  return {dump(report), failed};
}

Outcome oracle_cmd(const Common& c, const std::string& p1_file, const std::string& p2_file) {
  require_json(c, "oracle");
  const QuadratureConfig cfg = resolve_config(c);
  const json j1 = io::read_json_file(p1_file);
  const json j2 = io::read_json_file(p2_file);
  const OracleResult o = oracle(io::distribution_from_json(j1, cfg), io::distribution_from_json(j2, cfg), cfg);
  json report = envelope("oracle", cfg);
  report.update(io::to_json(o));
  report["inputs"] = {{"p1", j1}, {"p2", j2}};
  return {dump(report), !o.converged};
}

// Closed-form bounds matching the model and prior, if any.
json closed_forms(const io::BayesSpec& s, const QuadratureConfig& cfg) {
  const SamplingModel& m = s.model;
  const Prior& p = s.prior;
  json out = json::object();
  if (m.kind == ModelKind::NormalKnownVariance && p.kind() == PriorKind::Normal) {
    out["normal_normal"] = io::to_json(normal_normal_closed_form(m.sigma, m.data.n, m.data.xbar, p.params()[0],
                                                                 p.params()[1]));
  } else if (m.kind == ModelKind::Binomial && p.kind() == PriorKind::Beta) {
    out["binomial_beta"] = io::to_json(binomial_beta_closed_form(m.data.n, m.data.y, p.params()[0], p.params()[1]));
  } else if (m.kind == ModelKind::Binomial && p.kind() == PriorKind::Jeffreys) {
    out["binomial_jeffreys"] = io::to_json(binomial_jeffreys_closed_form(m.data.n, m.data.y));
  } else if (m.kind == ModelKind::Poisson && p.kind() == PriorKind::Exponential) {
    out["poisson_exponential_exact"] = io::to_json(poisson_exponential_exact(m.data.n, m.data.xbar, p.params()[0]));
  }
  if (m.kind == ModelKind::Poisson && p.kind() != PriorKind::Flat) {
    out["poisson_general_bound"] = io::to_json(poisson_general_bound(m.data.n, m.data.xbar, p, cfg));
  }
  return out;
}

Outcome bayes_cmd(const Common& c, const std::string& spec_file, bool with_oracle) {
  require_json(c, "bayes");
  const QuadratureConfig cfg = resolve_config(c);
  const json js = io::read_json_file(spec_file);
  const io::BayesSpec spec = io::bayes_spec_from_json(js);
  const PosteriorPair pair = build_posteriors(spec.model, spec.prior, cfg);
  const BoundsResult r = prior_impact_bounds(pair, cfg);

  json report = envelope("bayes", cfg);
  report.update(io::to_json(r));
  if (r.exact) report["value"] = r.lower;
  report["inputs"] = io::bayes_spec_to_json(spec);
  report["posteriors"] = {{"p1", io::distribution_to_json(pair.p1)},
                          {"p2", io::distribution_to_json(pair.p2)},
                          {"conjugate", pair.conjugate}};
  report["closed_form"] = closed_forms(spec, cfg);
  bool failed = result_failed(r);
  if (with_oracle) {
    const OracleResult o = oracle(pair.p1, pair.p2, cfg);
    report["oracle"] = io::to_json(o);
    failed = failed || !o.converged;
  }
  return {dump(report), failed};
}

Outcome kernel_cmd(const Common& c, const std::string& p1_file, int points, bool force_numeric) {
  if (points < 2) throw UsageError("--points must be at least 2");
  const QuadratureConfig cfg = resolve_config(c);
  const json j1 = io::read_json_file(p1_file);
  const Distribution d = io::distribution_from_json(j1, cfg);
  const SteinKernel tau(d, cfg, force_numeric ? KernelMode::ForceNumeric : KernelMode::Auto);

  // Quantile-spaced interior grid.
  std::vector<double> xs;
  for (int i = 0; i < points; ++i) xs.push_back(d.quantile((i + 0.5) / points));
  std::vector<double> taus;
  for (double x : xs) taus.push_back(tau(x));

  if (c.format != "json") {
    std::string body = csv_row({"x", "tau", "pdf"});
    for (std::size_t i = 0; i < xs.size(); ++i) body += csv_row({num(xs[i]), num(taus[i]), num(d.pdf(xs[i]))});
    return {body, false};
  }
  json report = envelope("kernel", cfg);
  report["inputs"] = {{"p1", j1}};
  report["origin"] = tau.origin() == KernelOrigin::Analytic ? "analytic" : "numeric";
  json rows = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({{"x", xs[i]}, {"tau", taus[i]}, {"pdf", d.pdf(xs[i])}});
  report["grid"] = rows;
  return {dump(report), false};
}

Outcome tilt_cmd(const Common& c, const std::string& p1_file, double target_mean) {
  require_json(c, "tilt");
  const QuadratureConfig cfg = resolve_config(c);
  const json j1 = io::read_json_file(p1_file);
  const Distribution base = io::distribution_from_json(j1, cfg);
  const TiltedDistribution t = tilt_distribution(base, target_mean, cfg);
  const TiltDistance d = tilt_distance_and_kl(t.spec, cfg);
  json report = envelope("tilt", cfg);
  report["inputs"] = {{"p1", j1}, {"target_mean", target_mean}};
  report["lambda1"] = t.spec.lambda1;
  report["mgf_at_lambda1"] = t.spec.mgf_at_lambda1;
  report["distance"] = d.distance;
  report["distance_kernel_form"] = d.distance_kernel_form;
  report["kl"] = d.kl;
  report["exact"] = d.exact;
  report["warnings"] = d.warnings;
  return {dump(report), false};
}

Outcome verify_cmd(const Common& c, const std::string& suite_name, int pairs) {
  require_json(c, "verify");
  const QuadratureConfig cfg = resolve_config(c);
  std::vector<Suite> suites;
  if (suite_name == "all") {
    suites = all_suites();
  } else if (const auto s = suite_from_string(suite_name)) {
    suites = {*s};
  } else {
    throw UsageError("unknown suite '" + suite_name + "'");
  }
  const VerifyOptions opts{cfg.seed, pairs};

  std::vector<SuiteReport> reports;
  const bool pair_both = std::count(suites.begin(), suites.end(), Suite::Sandwich) &&
                         std::count(suites.begin(), suites.end(), Suite::Oracle);
  std::optional<PairSuites> shared;
  if (pair_both) shared = run_pair_suites(opts, cfg);
  for (Suite s : suites) {
    if (shared && s == Suite::Sandwich) {
      reports.push_back(shared->sandwich);
    } else if (shared && s == Suite::Oracle) {
      reports.push_back(shared->oracle);
    } else {
      reports.push_back(run_suite(s, opts, cfg));
    }
  }

  json report = envelope("verify", cfg);
  json list = json::array();
  std::size_t total = 0;
  for (const SuiteReport& r : reports) {
    json failures = json::array();
    for (const CheckOutcome& ch : r.checks) {
      if (!ch.passed) failures.push_back({{"name", ch.name}, {"value", io::format_double(ch.value)}, {"tolerance", ch.tolerance}});
    }
    total += r.violations();
    list.push_back({{"suite", r.suite}, {"checks", r.checks.size()}, {"violations", r.violations()}, {"failures", failures}});
  }
  report["suites"] = list;
  report["pairs"] = pairs;
  report["passed"] = total == 0;
  return {dump(report), total != 0};
}

// Sets `path` (dotted, e.g. "model.n" or "prior.delta") in a bayes spec;
// integers stay integers.
void set_path(json& spec, const std::string& path, double value) {
  const auto dot = path.find('.');
  if (dot == std::string::npos) throw UsageError("--param must look like model.<key> or prior.<key>");
  const std::string head = path.substr(0, dot);
  const std::string key = path.substr(dot + 1);
  if (!spec.contains(head) || !spec[head].is_object()) throw UsageError("spec has no '" + head + "' object");
  json& slot = spec[head][key];
  if (key == "n" || key == "y") {
    if (value != std::floor(value)) throw UsageError("'" + key + "' takes integer values");
    slot = static_cast<long long>(value);
  } else {
    slot = value;
  }
}

Outcome sweep_cmd(const Common& c, const std::string& spec_file, const std::string& param,
                  const std::vector<double>& values, bool parallel) {
  if (values.empty()) throw UsageError("--values needs at least one value");
  const QuadratureConfig cfg = resolve_config(c);
  const json base = io::read_json_file(spec_file);

  struct Row {
    double value;
    BoundsResult engine;
    std::optional<BoundsResult> closed;
  };
  auto evaluate = [&](double v) {
    json spec = base;
    set_path(spec, param, v);
    const io::BayesSpec s = io::bayes_spec_from_json(spec);
    const PosteriorPair pair = build_posteriors(s.model, s.prior, cfg);
    Row row{v, prior_impact_bounds(pair, cfg), std::nullopt};
    const json cf = closed_forms(s, cfg);
    for (const auto& [name, r] : cf.items()) {
      if (name != "poisson_general_bound") row.closed = io::bounds_from_json(r);
    }
    return row;
  };

  std::vector<Row> rows;
  if (parallel) {
    std::vector<std::future<Row>> jobs;
    for (double v : values) jobs.push_back(std::async(std::launch::async, evaluate, v));
    for (auto& j : jobs) rows.push_back(j.get());
  } else {
    for (double v : values) rows.push_back(evaluate(v));
  }

  bool failed = false;
  for (const Row& r : rows) failed = failed || result_failed(r.engine);
  if (c.format != "json") {
    std::string body = csv_row({"param", "value", "lower", "upper", "exact", "closed_lower", "closed_upper"});
    for (const Row& r : rows) {
      const double up = r.engine.upper_infinite ? kInf : r.engine.upper;
      body += csv_row({param, num(r.value), num(r.engine.lower), num(up), r.engine.exact ? "1" : "0",
                       r.closed ? num(r.closed->lower) : "", r.closed ? num(r.closed->upper) : ""});
    }
    return {body, failed};
  }
  json report = envelope("sweep", cfg);
  report["inputs"] = {{"spec", base}, {"param", param}};
  json list = json::array();
  for (const Row& r : rows) {
    json item{{"value", r.value}, {"result", io::to_json(r.engine)}};
    if (r.closed) item["closed_form"] = io::to_json(*r.closed);
    list.push_back(item);
  }
  report["rows"] = list;
  return {dump(report), failed};
}

bool usage_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidParams:
    case ErrorCode::InvalidData:
    case ErrorCode::OutOfRange:
    case ErrorCode::SupportNotNested:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stein-kernel bounds on Wasserstein-1 distances between nested univariate laws", "stein-bounds"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Common common;
  std::string p1, p2, spec, method = "auto", suite = "all", param;
  bool with_oracle = false, force_numeric = false, parallel = false;
  int points = 201;
  int pairs = 200;
  double target_mean = 0.0;
  std::vector<double> values;

  CLI::App* bound = app.add_subcommand("bound", "Bounds on d_W(P1, P2)");
  bound->add_option("--p1", p1, "Distribution spec of P1")->required();
  bound->add_option("--p2", p2, "Distribution spec of P2")->required();
  bound->add_option("--method", method, "auto, theorem, variance or monotone")
      ->check(CLI::IsMember({"auto", "theorem", "variance", "monotone"}));
  bound->add_flag("--with-oracle", with_oracle, "Also compute d_W by quadrature");
  add_common(bound, common);

  CLI::App* orc = app.add_subcommand("oracle", "d_W(P1, P2) by its cdf and quantile integrals");
  orc->add_option("--p1", p1, "Distribution spec of P1")->required();
  orc->add_option("--p2", p2, "Distribution spec of P2")->required();
  add_common(orc, common);

  CLI::App* bayes = app.add_subcommand("bayes", "Impact of a prior on the posterior");
  bayes->add_option("--spec", spec, "Model and prior spec")->required();
  bayes->add_flag("--with-oracle", with_oracle, "Also compute d_W between the posteriors");
  add_common(bayes, common);

  CLI::App* kernel = app.add_subcommand("kernel", "Stein kernel on a quantile grid");
  kernel->add_option("--p1", p1, "Distribution spec")->required();
  kernel->add_option("--points", points, "Number of grid points");
  kernel->add_flag("--numeric", force_numeric, "Use the quadrature kernel even when a closed form exists");
  add_common(kernel, common);

  CLI::App* tilt = app.add_subcommand("tilt", "Exponential tilt of P1 to a target mean");
  tilt->add_option("--p1", p1, "Distribution spec of the base law")->required();
  tilt->add_option("--target-mean", target_mean, "Mean of the tilted law")->required();
  add_common(tilt, common);

  CLI::App* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--suite", suite, "all, kernel, sandwich, oracle, lipschitz or bayes");
  verify->add_option("--pairs", pairs, "Random pairs for the sandwich and oracle suites")
      ->check(CLI::PositiveNumber);
  add_common(verify, common);

  CLI::App* sweep = app.add_subcommand("sweep", "Bayes bounds over a range of one parameter");
  sweep->add_option("--spec", spec, "Model and prior spec")->required();
  sweep->add_option("--param", param, "Dotted path, e.g. model.n or prior.delta")->required();
  sweep->add_option("--values", values, "Parameter values")->required()->delimiter(',');
  sweep->add_flag("--parallel", parallel, "Evaluate points concurrently; output order is unchanged");
  add_common(sweep, common);

  // CLI11 consumes arguments from the back and skips the program name.
  std::vector<std::string> rev;
  if (!args.empty()) rev.assign(args.rbegin(), std::prev(args.rend()));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    Outcome o;
    if (*bound) {
      o = bound_cmd(common, p1, p2, method, with_oracle);
    } else if (*orc) {
      o = oracle_cmd(common, p1, p2);
    } else if (*bayes) {
      o = bayes_cmd(common, spec, with_oracle);
    } else if (*kernel) {
      o = kernel_cmd(common, p1, points, force_numeric);
    } else if (*tilt) {
      o = tilt_cmd(common, p1, target_mean);
    } else if (*verify) {
      o = verify_cmd(common, suite, pairs);
    } else {
      o = sweep_cmd(common, spec, param, values, parallel);
    }
    if (common.out.empty()) {
      out << o.body;
    } else {
      io::write_text_file(common.out, o.body);
    }
    if (o.numeric_failure) {
      err << "warning: numeric failure flagged in the report\n";
      return kExitNumeric;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_code(e.code()) ? kExitUsage : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace steinbounds::cli
