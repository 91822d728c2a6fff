#include "steinbounds/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "steinbounds/bayes.hpp"
#include "steinbounds/bounds.hpp"
#include "steinbounds/error.hpp"
#include "steinbounds/oracle.hpp"
#include "steinbounds/quadrature.hpp"
#include "steinbounds/stein.hpp"

namespace steinbounds {
namespace {

constexpr double kSandwichTol = 1e-5;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void check(SuiteReport& report, std::string name, double value, double tolerance) {
  const bool ok = std::isfinite(value) && value <= tolerance;
  report.checks.push_back({std::move(name), value, tolerance, ok});
}

// Runs `body`; a thrown library error becomes a failed check.
void guarded(SuiteReport& report, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report.checks.push_back({name + " threw: " + e.what(), kInf, 0.0, false});
  }
}

// Quantile levels evenly spaced over [1e-4, 1 - 1e-4]; the endpoints
// themselves can be genuine singularities of a kernel.
std::vector<double> quantile_grid(const Distribution& d, int n) {
  constexpr double kEdge = 1e-4;
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(d.quantile(kEdge + (1.0 - 2.0 * kEdge) * i / (n - 1)));
  return xs;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

SuiteReport kernel_suite(const QuadratureConfig& config) {
  SuiteReport report{"kernel", {}};
  const std::vector<Distribution> laws = {
      Distribution::normal(0.0, 1.0),        Distribution::normal(2.0, 0.5),
      Distribution::beta(2.0, 3.0),          Distribution::beta(1.5, 4.0),
      Distribution::beta(0.8, 1.2),          Distribution::gamma(2.0, 1.0),
      Distribution::gamma(0.8, 2.0),         Distribution::exponential(1.5),
      Distribution::skew_normal(0.0, 1.0, 1.0, config),
      Distribution::skew_normal(1.0, 2.0, -3.0, config),
      Distribution::custom([](double x) { return -x - 2.0 * std::log1p(std::exp(-x)); },
                           SupportInterval::real_line(), config, std::nullopt, "Logistic"),
  };
  const std::array<TestFunction, 3> tests = {
      TestFunction{"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }},
      TestFunction{"atan", [](double x) { return std::atan(x); }, [](double x) { return 1.0 / (1.0 + x * x); }},
      TestFunction{"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }},
  };

  for (const Distribution& d : laws) {
    const std::string tag = d.name() + ": ";
    guarded(report, tag + "kernel", [&] {
      const SteinKernel tau(d, config);
      const std::vector<double> xs = quantile_grid(d, 101);
      double most_negative = 0.0;
      for (double x : xs) most_negative = std::max(most_negative, -tau(x));
      check(report, tag + "tau >= 0", most_negative, 0.0);

      const double mean_tau = expectation(d, [&](double x) { return tau(x); }, config).value;
      check(report, tag + "E tau = Var", std::abs(mean_tau - d.variance()) / std::max(1.0, d.variance()), 1e-7);

      if (d.has_analytic_kernel()) {
        const SteinKernel numeric(d, config, KernelMode::ForceNumeric);
        double worst = 0.0;
        for (double x : xs) {
          const double a = tau(x);
          worst = std::max(worst, std::abs(a - numeric(x)) / std::max(1.0, a));
        }
        check(report, tag + "analytic = numeric kernel", worst, 1e-6);
      }

      const KernelIdentityReport id = verify_kernel_identity(d, tau, tests, config);
      for (const auto& e : id.entries) check(report, tag + "identity " + e.name, e.difference, id.tolerance);
    });
  }
  return report;
}

SuiteReport lipschitz_suite(const QuadratureConfig& config) {
  SuiteReport report{"lipschitz", {}};
  const std::vector<Distribution> laws = {Distribution::normal(0.0, 1.0), Distribution::beta(2.0, 3.0),
                                          Distribution::gamma(2.0, 1.0)};
  for (const Distribution& d : laws) {
    const double med = d.quantile(0.5);
    const std::vector<std::pair<std::string, RealFn>> hs = {
        {"x", [](double x) { return x; }},
        {"|x - median|", [med](double x) { return std::abs(x - med); }},
        {"sin", [](double x) { return std::sin(x); }},
        {"min(x, median)", [med](double x) { return std::min(x, med); }},
        {"-|x - mean| / 2", [mu = d.mean()](double x) { return -0.5 * std::abs(x - mu); }},
    };
    std::vector<double> xs = quantile_grid(d, 41);
    xs.push_back(d.quantile(1e-6));
    xs.push_back(d.quantile(1.0 - 1e-6));
    const SteinKernel tau(d, config);
    for (const auto& [hname, h] : hs) {
      const std::string name = d.name() + ": |g_h| <= 1 for h = " + hname;
      guarded(report, name, [&] {
        const GhFunction g(d, tau, h, config);
        double worst = 0.0;
        for (double x : xs) worst = std::max(worst, std::abs(g(x)));
        check(report, name, std::max(0.0, worst - 1.0), 1e-6);
      });
    }
  }
  return report;
}

void sandwich_checks(SuiteReport& report, const PairCase& pc, const OracleResult& o,
                     const QuadratureConfig& config) {
  const std::string tag = pc.label + ": ";
  const BoundsResult r = bounds_theorem(pc.p1, pc.p2, config);
  const double upper = r.upper_infinite ? kInf : r.upper;
  check(report, tag + "lower <= upper", std::max(0.0, r.lower - upper), kSandwichTol);
  if (o.converged) {
    check(report, tag + "lower <= oracle", std::max(0.0, r.lower - o.value_cdf), kSandwichTol);
    check(report, tag + "oracle <= upper", std::max(0.0, o.value_cdf - upper), kSandwichTol);
  }
  if (r.conditions.endpoint_limit_ok()) {
    const double signed_gap = r.diagnostics.at("signed_integral") - (pc.p2.mean() - pc.p1.mean());
    check(report, tag + "E[pi0' tau1] = E X2 - E X1", std::abs(signed_gap), 1e-7);
  }

  const LikelihoodRatio lr(pc.p1, pc.p2, config);
  const Window w = union_window(pc.p1, pc.p2, pc.p2.support());
  const double mass = integrate(
                          [&](double x) {
                            const double l = lr.log_ratio(x) + pc.p1.log_pdf(x);
                            return std::isnan(l) ? 0.0 : std::exp(l);
                          },
                          w.lo, w.hi, config)
                          .value;
  check(report, tag + "E_P1[pi0] = 1", std::abs(mass - 1.0), 1e-7);

  if (detect_monotone(lr, config).direction != Monotonicity::NonMonotone) {
    const BoundsResult e = exact_distance_monotone(pc.p1, pc.p2, config);
    check(report, tag + "monotone: upper = lower", e.upper - e.lower, kSandwichTol);
    if (o.converged) check(report, tag + "monotone: value = oracle", std::abs(e.lower - o.value_cdf), kSandwichTol);
  }
}

SuiteReport bayes_suite(const QuadratureConfig& config) {
  SuiteReport report{"bayes", {}};
  const SamplingModel normal_model = SamplingModel::normal(1.0, 4, 0.5);
  const SamplingModel binom = SamplingModel::binomial(10, 5);
  const SamplingModel pois = SamplingModel::poisson(10, 2.0);

  struct Conj {
    std::string name;
    SamplingModel model;
    Prior closed;
    Prior custom;
  };
  const std::vector<Conj> conj = {
      {"normal-normal", normal_model, Prior::normal(0.0, 1.0),
       Prior::custom("exp(-x^2/2)", SupportInterval::real_line())},
      {"binomial-beta(2,2)", binom, Prior::beta(2.0, 2.0),
       Prior::custom("x*(1-x)", SupportInterval::unit_interval(false))},
      {"binomial-jeffreys", binom, Prior::jeffreys(),
       Prior::custom("1/sqrt(x*(1-x))", SupportInterval::unit_interval(false))},
      {"poisson-exponential(1)", pois, Prior::exponential(1.0),
       Prior::custom("exp(-x)", SupportInterval::positive_half_line(true))},
  };
  for (const Conj& c : conj) {
    guarded(report, c.name, [&] {
      const PosteriorPair a = build_posteriors(c.model, c.closed, config);
      const PosteriorPair b = build_posteriors(c.model, c.custom, config);
      const Window w = a.p2.window();
      double worst = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = w.lo + w.width() * i / 200.0;
        worst = std::max(worst, std::abs(a.p2.cdf(x) - b.p2.cdf(x)));
      }
      check(report, c.name + ": conjugate = quadrature posterior cdf", worst, 1e-6);

      const BoundsResult ea = prior_impact_bounds(a, config);
      const BoundsResult eb = prior_impact_bounds(b, config);
      check(report, c.name + ": engine lower, closed vs quadrature posterior", std::abs(ea.lower - eb.lower), 1e-6);
      check(report, c.name + ": engine upper, closed vs quadrature posterior", std::abs(ea.upper - eb.upper), 1e-6);
      check(report, c.name + ": score form = ratio form",
            ea.diagnostics.count("ratio_form_discrepancy") ? ea.diagnostics.at("ratio_form_discrepancy") : 0.0,
            1e-6);

      const OracleResult o = oracle(a.p1, a.p2, config);
      check(report, c.name + ": oracle converged", o.converged ? 0.0 : 1.0, 0.0);
      check(report, c.name + ": lower <= oracle", std::max(0.0, ea.lower - o.value_cdf), kSandwichTol);
      check(report, c.name + ": oracle <= upper", std::max(0.0, o.value_cdf - ea.upper), kSandwichTol);
    });
  }

  guarded(report, "closed forms", [&] {
    const PosteriorPair nn = build_posteriors(normal_model, Prior::normal(0.0, 1.0), config);
    const BoundsResult nn_e = prior_impact_bounds(nn, config);
    const BoundsResult nn_c = normal_normal_closed_form(1.0, 4, 0.5, 0.0, 1.0);
    check(report, "normal-normal: closed lower = engine lower", std::abs(nn_c.lower - nn_e.lower), 1e-6);
    check(report, "normal-normal: engine upper <= closed upper", std::max(0.0, nn_e.upper - nn_c.upper), 1e-9);

    const PosteriorPair bb = build_posteriors(binom, Prior::beta(2.0, 2.0), config);
    const BoundsResult bb_e = prior_impact_bounds(bb, config);
    const BoundsResult bb_c = binomial_beta_closed_form(10, 5, 2.0, 2.0);
    check(report, "binomial-beta: closed lower = engine lower", std::abs(bb_c.lower - bb_e.lower), 1e-6);
    check(report, "binomial-beta: engine upper <= closed upper", std::max(0.0, bb_e.upper - bb_c.upper), 1e-9);

    const PosteriorPair bj = build_posteriors(binom, Prior::jeffreys(), config);
    const BoundsResult bj_e = prior_impact_bounds(bj, config);
    const BoundsResult bj_c = binomial_jeffreys_closed_form(10, 5);
    check(report, "jeffreys: closed lower = engine lower", std::abs(bj_c.lower - bj_e.lower), 1e-5);
    check(report, "jeffreys: engine upper <= closed upper", std::max(0.0, bj_e.upper - bj_c.upper), 1e-9);

    const PosteriorPair pe = build_posteriors(pois, Prior::exponential(1.0), config);
    const BoundsResult pe_e = prior_impact_bounds(pe, config);
    const BoundsResult pe_c = poisson_exponential_exact(10, 2.0, 1.0);
    check(report, "poisson: engine takes the exact path", pe_e.exact ? 0.0 : 1.0, 0.0);
    check(report, "poisson: exact = engine", std::abs(pe_c.lower - pe_e.lower), 1e-6);
    const BoundsResult pg = poisson_general_bound(10, 2.0, Prior::exponential(1.0), config);
    check(report, "poisson: general bound >= exact", std::max(0.0, pe_c.upper - pg.upper), 0.0);

    const BoundsResult flat = prior_impact_bounds(build_posteriors(binom, Prior::flat(), config), config);
    check(report, "flat prior: bounds vanish", std::max(flat.lower, flat.upper), 0.0);

    for (int n : {10, 100}) {
      const double ratio =
          normal_normal_closed_form(1.0, 100 * n, 0.0, 0.0, 1.0).upper / normal_normal_closed_form(1.0, n, 0.0, 0.0, 1.0).upper;
      check(report, fmt("normal-normal: upper(100n)/upper(n) at n = %.0f", n), std::max(0.0, ratio - 0.012), 0.0);
    }
  });
  return report;
}

}  // namespace

std::size_t SuiteReport::violations() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::Kernel: return "kernel";
    case Suite::Sandwich: return "sandwich";
    case Suite::Oracle: return "oracle";
    case Suite::Lipschitz: return "lipschitz";
    case Suite::Bayes: return "bayes";
  }
  return "unknown";
}

std::optional<Suite> suite_from_string(std::string_view name) noexcept {
  for (Suite s : all_suites()) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Suite> all_suites() {
  return {Suite::Kernel, Suite::Sandwich, Suite::Oracle, Suite::Lipschitz, Suite::Bayes};
}

std::vector<PairCase> random_pairs(std::uint64_t seed, int count, const QuadratureConfig& config) {
  std::mt19937_64 rng(seed);
  std::vector<PairCase> out;
  out.reserve(count);
  char label[160];
  for (int i = 0; i < count; ++i) {
    const int kind = i % 7;
    switch (kind) {
      case 0: {
        const double m1 = uniform(rng, -2, 2), s1 = uniform(rng, 0.5, 2);
        const double m2 = uniform(rng, -2, 2), s2 = uniform(rng, 0.5, 2);
        std::snprintf(label, sizeof label, "N(%.3f,%.3f) vs N(%.3f,%.3f)", m1, s1, m2, s2);
        out.push_back({label, Distribution::normal(m1, s1), Distribution::normal(m2, s2)});
        break;
      }
      case 1: {
        const double a1 = uniform(rng, 1.5, 8), b1 = uniform(rng, 1.5, 8);
        const double a2 = uniform(rng, 1.5, 8), b2 = uniform(rng, 1.5, 8);
        std::snprintf(label, sizeof label, "Beta(%.3f,%.3f) vs Beta(%.3f,%.3f)", a1, b1, a2, b2);
        out.push_back({label, Distribution::beta(a1, b1), Distribution::beta(a2, b2)});
        break;
      }
      case 2: {
        const double k1 = uniform(rng, 1.5, 6), l1 = uniform(rng, 0.5, 2);
        const double k2 = uniform(rng, 1.5, 6), l2 = uniform(rng, 0.5, 2);
        std::snprintf(label, sizeof label, "Gamma(%.3f,%.3f) vs Gamma(%.3f,%.3f)", k1, l1, k2, l2);
        out.push_back({label, Distribution::gamma(k1, l1), Distribution::gamma(k2, l2)});
        break;
      }
      case 3: {
        const double r = uniform(rng, 0.5, 2);
        const double k = uniform(rng, 1.5, 5), l = uniform(rng, 0.3, 1.5);
        std::snprintf(label, sizeof label, "Exp(%.3f) vs Gamma(%.3f,%.3f)", r, k, l);
        out.push_back({label, Distribution::exponential(r), Distribution::gamma(k, l)});
        break;
      }
      case 4: {
        const double m = uniform(rng, -1, 1), s = uniform(rng, 0.8, 1.5);
        const double loc = uniform(rng, -1, 1), sc = uniform(rng, 0.7, 1.4), sh = uniform(rng, -5, 5);
        std::snprintf(label, sizeof label, "N(%.3f,%.3f) vs SN(%.3f,%.3f,%.3f)", m, s, loc, sc, sh);
        out.push_back({label, Distribution::normal(m, s), Distribution::skew_normal(loc, sc, sh, config)});
        break;
      }
      case 5: {
        const double m = uniform(rng, 0, 3), s = uniform(rng, 0.8, 2.5);
        const double k = uniform(rng, 2, 6), l = uniform(rng, 0.3, 1);
        std::snprintf(label, sizeof label, "N(%.3f,%.3f) vs Gamma(%.3f,%.3f)", m, s, k, l);
        out.push_back({label, Distribution::normal(m, s), Distribution::gamma(k, l)});
        break;
      }
      default: {
        const double m = uniform(rng, 0, 1), s = uniform(rng, 0.3, 1);
        const double a = uniform(rng, 2, 6), b = uniform(rng, 2, 6);
        std::snprintf(label, sizeof label, "N(%.3f,%.3f) vs Beta(%.3f,%.3f)", m, s, a, b);
        out.push_back({label, Distribution::normal(m, s), Distribution::beta(a, b)});
        break;
      }
    }
  }
  return out;
}

PairSuites run_pair_suites(const VerifyOptions& options, const QuadratureConfig& config) {
  PairSuites out{{"sandwich", {}}, {"oracle", {}}};
  const std::vector<PairCase> pairs = random_pairs(options.seed, options.pairs, config);
  std::vector<OracleResult> oracles(pairs.size());

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairCase& pc = pairs[i];
    guarded(out.oracle, pc.label, [&] {
      oracles[i] = oracle(pc.p1, pc.p2, config);
      check(out.oracle, pc.label + ": cdf form = quantile form",
            oracles[i].converged ? oracles[i].agreement : kInf, kSandwichTol);
    });
    guarded(out.sandwich, pc.label, [&] { sandwich_checks(out.sandwich, pc, oracles[i], config); });
  }

  // Metric axioms on a subset; each needs extra oracle evaluations.
  const std::size_t sub = std::min<std::size_t>(pairs.size(), 21);
  for (std::size_t i = 0; i < sub; ++i) {
    const PairCase& pc = pairs[i];
    guarded(out.oracle, pc.label + " axioms", [&] {
      check(out.oracle, pc.label + ": d(p, p) = 0", oracle_cdf(pc.p1, pc.p1, config).value, 1e-7);
      check(out.oracle, pc.label + ": d(p, q) = d(q, p)",
            std::abs(oracle_cdf(pc.p2, pc.p1, config).value - oracles[i].value_cdf), 1e-6);
      if (i + 1 < pairs.size()) {
        const Distribution& a = pc.p1;
        const Distribution& b = pc.p2;
        const Distribution& c = pairs[i + 1].p2;
        const double ac = oracle_cdf(a, c, config).value;
        const double bc = oracle_cdf(b, c, config).value;
        check(out.oracle, pc.label + ": triangle inequality", std::max(0.0, ac - oracles[i].value_cdf - bc), 1e-5);
      }
    });
  }
  for (double m : {0.1, 0.5, 1.0, 3.0}) {
    const double d = oracle_cdf(Distribution::normal(0, 1), Distribution::normal(m, 1), config).value;
    check(out.oracle, fmt("shift: d(N(0,1), N(%g,1)) = %g", m, m), std::abs(d - m), 1e-6);
  }
  return out;
}

SuiteReport run_suite(Suite suite, const VerifyOptions& options, const QuadratureConfig& config) {
  switch (suite) {
    case Suite::Kernel: return kernel_suite(config);
    case Suite::Sandwich: return run_pair_suites(options, config).sandwich;
    case Suite::Oracle: return run_pair_suites(options, config).oracle;
    case Suite::Lipschitz: return lipschitz_suite(config);
    case Suite::Bayes: return bayes_suite(config);
  }
  return {};
}

}  // namespace steinbounds
