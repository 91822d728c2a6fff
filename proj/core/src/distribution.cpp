#include "steinbounds/distribution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "steinbounds/error.hpp"
#include "steinbounds/quadrature.hpp"
#include "steinbounds/special.hpp"

namespace steinbounds {

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Normal: return "normal";
    case Family::Beta: return "beta";
    case Family::Gamma: return "gamma";
    case Family::Exponential: return "exponential";
    case Family::SkewNormal: return "skew_normal";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

SupportInterval::SupportInterval(double lower, double upper, bool lower_closed, bool upper_closed)
    : lower_(lower),
      upper_(upper),
      lower_closed_(lower_closed && std::isfinite(lower)),
      upper_closed_(upper_closed && std::isfinite(upper)) {
  if (std::isnan(lower) || std::isnan(upper) || !(lower < upper)) {
    std::ostringstream os;
    os << "support requires lower < upper, got [" << lower << ", " << upper << "]";
    throw Error(ErrorCode::InvalidParams, os.str());
  }
}

bool SupportInterval::contains(double x) const noexcept {
  if (x > lower_ && x < upper_) return true;
  return (x == lower_ && lower_closed_) || (x == upper_ && upper_closed_);
}

namespace {

constexpr double kNegInf = -kInf;
// Log-density drop, relative to the running maximum, at which a tail is
// considered exhausted (exp(-46) ~ 1e-20).
constexpr double kLogDrop = 46.0;

double xlogy(double a, double x) {
  if (a == 0.0) return 0.0;
  return a * std::log(x);
}

double xlog1py(double a, double x) {
  if (a == 0.0) return 0.0;
  return a * std::log1p(x);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParams, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// Cumulative table for a density known only through its (unnormalised)
// log. Built once; every query afterwards is a short quadrature inside one
// panel of the table.
class NumericTable {
 public:
  NumericTable(std::function<double(double)> log_f, const SupportInterval& support,
               const QuadratureConfig& config, std::optional<Window> hint)
      : log_f_(std::move(log_f)), support_(support), config_(config) {
    config_.abs_tol = 1e-300;
    config_.rel_tol = std::min(config.rel_tol, 1e-10);
    locate(hint);
    normalise();
    moments();
  }

  double log_norm() const { return log_scale_ + std::log(total_); }
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  double scaled(double x) const {
    if (!support_.contains(x)) return 0.0;
    const double lf = log_f_(x);
    if (std::isnan(lf)) throw Error(ErrorCode::NaNDensity, "density is NaN at x = " + std::to_string(x));
    return std::exp(lf - log_scale_);
  }

  double cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const std::size_t k = static_cast<std::size_t>(std::distance(edges_.begin(), it)) - 1;
    const double partial = partial_integral(k, x);
    return std::clamp((cum_[k] + partial) / total_, 0.0, 1.0);
  }

  double quantile(double u, double log_norm_density) const {
    const double target = u * total_;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    std::size_t k = it == cum_.begin() ? 0 : static_cast<std::size_t>(std::distance(cum_.begin(), it)) - 1;
    k = std::min(k, edges_.size() - 2);
    double lo = edges_[k];
    double hi = edges_[k + 1];
    auto g = [&](double x) { return (cum_[k] + partial_integral(k, x)) / total_ - u; };
    const double width_tol =
        std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)));
    double flo = g(lo);
    for (int i = 0; i < 200 && hi - lo > width_tol; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const double fm = g(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double x = 0.5 * (lo + hi);
    // Newton polish.
    const double dens = std::exp(log_f_(x) - log_norm_density);
    if (dens > 0.0 && std::isfinite(dens)) {
      const double step = g(x) / dens;
      const double candidate = x - step;
      if (std::abs(step) < 1e3 * width_tol && candidate >= edges_[k] && candidate <= edges_[k + 1]) {
        x = candidate;
      }
    }
    return x;
  }

  Window range() const { return {lo_, hi_}; }

 private:
  double partial_integral(std::size_t k, double x) const {
    if (x <= edges_[k]) return 0.0;
    auto f = [this](double y) { return scaled(y); };
    QuadratureConfig cfg = config_;
    cfg.abs_tol = 1e-14 * panel_mass(k) + 1e-300;
    return integrate(f, edges_[k], std::min(x, edges_[k + 1]), cfg).value;
  }

  double panel_mass(std::size_t k) const { return cum_[k + 1] - cum_[k]; }

  double eval_log(double x) const {
    const double lf = log_f_(x);
    if (std::isnan(lf)) throw Error(ErrorCode::NaNDensity, "log-density is NaN at x = " + std::to_string(x));
    return lf;
  }

  // Finds a point of positive density, the approximate peak, and a finite
  // range [lo_, hi_] outside of which the density is negligible.
  void locate(const std::optional<Window>& hint) {
    const double a = support_.lower();
    const double b = support_.upper();
    double scale = 1.0;
    double x0 = 0.0;
    if (hint && hint->hi > hint->lo) {
      scale = std::max(hint->width() / 8.0, 1e-300);
      x0 = 0.5 * (hint->lo + hint->hi);
    } else if (support_.lower_finite() && support_.upper_finite()) {
      scale = (b - a) / 8.0;
      x0 = 0.5 * (a + b);
    } else if (support_.lower_finite()) {
      x0 = a + 1.0;
    } else if (support_.upper_finite()) {
      x0 = b - 1.0;
    }
    if (!support_.interior(x0)) {
      x0 = support_.lower_finite() && support_.upper_finite() ? 0.5 * (a + b)
           : support_.lower_finite()                          ? a + scale
                                                              : b - scale;
    }

    double lmax = eval_log(x0);
    double xmax = x0;
    auto consider = [&](double x) {
      if (!support_.interior(x)) return kNegInf;
      const double lf = eval_log(x);
      if (lf > lmax) {
        lmax = lf;
        xmax = x;
      }
      return lf;
    };

    if (support_.lower_finite() && support_.upper_finite()) {
      constexpr int kScan = 513;
      for (int i = 1; i < kScan; ++i) consider(a + (b - a) * i / kScan);
    } else if (lmax == kNegInf) {
      for (int k = 0; k < 1100 && lmax == kNegInf; ++k) {
        const double s = scale * std::ldexp(1.0, k / 2);
        consider(k % 2 == 0 ? x0 + s : x0 - s);
      }
    }
    if (lmax == kNegInf) throw Error(ErrorCode::NonIntegrable, "density vanishes everywhere it was probed");
    if (lmax == kInf) throw Error(ErrorCode::NonIntegrable, "density is infinite in the interior");

    lo_ = a;
    hi_ = b;
    if (!support_.upper_finite()) hi_ = expand(xmax, +1, scale, lmax, xmax, consider);
    if (!support_.lower_finite()) lo_ = expand(xmax, -1, scale, lmax, xmax, consider);

    // Refine the peak for the rescaling constant.
    constexpr int kRefine = 512;
    for (int i = 1; i < kRefine; ++i) consider(lo_ + (hi_ - lo_) * i / kRefine);
    log_scale_ = lmax;
    peak_ = xmax;
  }

  template <class Consider>
  double expand(double from, int dir, double scale, double& lmax, double& xmax, Consider& consider) {
    double s = scale;
    double prev = from;
    for (int k = 0; k < 2100; ++k) {
      const double x = from + dir * s;
      if (!std::isfinite(x)) break;
      const double lf = consider(x);
      if (lf < lmax - kLogDrop && (x - xmax) * dir > 0) {
        tail_prev_[dir > 0] = prev;
        return x;
      }
      prev = x;
      s *= 2.0;
    }
    (void)xmax;
    throw Error(ErrorCode::NonIntegrable, "density does not decay in the tail");
  }

  // Exponential-tail estimate of the mass beyond an infinite-side cut.
  double tail_mass(int dir) const {
    const double edge = dir > 0 ? hi_ : lo_;
    const double prev = tail_prev_[dir > 0];
    const double l_edge = log_f_(edge);
    const double l_prev = log_f_(prev);
    if (l_edge == kNegInf) return 0.0;
    const double rate = (l_prev - l_edge) / std::abs(edge - prev);
    if (!(rate > 0.0)) return kInf;
    return std::exp(l_edge - log_scale_) / rate;
  }

  double tail_second_moment(int dir) const {
    const double edge = dir > 0 ? hi_ : lo_;
    const double m = tail_mass(dir);
    const double prev = tail_prev_[dir > 0];
    const double rate = (log_f_(prev) - log_f_(edge)) / std::abs(edge - prev);
    const double d = std::abs(edge - mean_) + 1.0 / rate;
    return m * d * d;
  }

  void normalise() {
    auto f = [this](double x) { return scaled(x); };
    for (int attempt = 0; attempt < 64; ++attempt) {
      const std::array<double, 1> cuts{peak_};
      IntegrateOptions opts;
      opts.breakpoints = cuts;
      opts.keep_panels = true;
      opts.max_panels = 8000;
      IntegrationResult r = integrate(f, lo_, hi_, config_, opts);
      if (!r.converged || !(r.value > 0.0) || !std::isfinite(r.value)) {
        throw Error(ErrorCode::NonIntegrable, "normalising integral did not converge");
      }
      bool extended = false;
      for (int dir : {-1, +1}) {
        const bool infinite = dir > 0 ? !support_.upper_finite() : !support_.lower_finite();
        if (!infinite) continue;
        if (tail_mass(dir) > config_.tail_epsilon * r.value) {
          double& edge = dir > 0 ? hi_ : lo_;
          tail_prev_[dir > 0] = edge;
          edge = edge + (edge - peak_);
          extended = true;
        }
      }
      if (extended) continue;
      edges_.clear();
      cum_.assign(1, 0.0);
      for (const Panel& p : r.panels) {
        edges_.push_back(p.lo);
        cum_.push_back(cum_.back() + p.value);
      }
      edges_.push_back(hi_);
      total_ = cum_.back();
      return;
    }
    throw Error(ErrorCode::NonIntegrable, "tail mass does not vanish");
  }

  void moments() {
    double m1 = 0.0;
    for (std::size_t k = 0; k + 1 < edges_.size(); ++k) {
      m1 += kronrod21([this](double x) { return x * scaled(x); }, edges_[k], edges_[k + 1]).value;
    }
    mean_ = m1 / total_;
    double m2 = 0.0;
    for (std::size_t k = 0; k + 1 < edges_.size(); ++k) {
      m2 += kronrod21(
                [this](double x) {
                  const double d = x - mean_;
                  return d * d * scaled(x);
                },
                edges_[k], edges_[k + 1])
                .value;
    }
    variance_ = m2 / total_;
    double tail2 = 0.0;
    if (!support_.upper_finite()) tail2 += tail_second_moment(+1);
    if (!support_.lower_finite()) tail2 += tail_second_moment(-1);
    if (!std::isfinite(mean_) || !finite_positive(variance_) || tail2 > 1e-6 * m2) {
      throw Error(ErrorCode::NonIntegrable, "mean or variance is not finite");
    }
  }

  std::function<double(double)> log_f_;
  SupportInterval support_;
  QuadratureConfig config_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double peak_ = 0.0;
  double log_scale_ = 0.0;
  double total_ = 0.0;
  double mean_ = 0.0;
  double variance_ = 0.0;
  std::array<double, 2> tail_prev_{0.0, 0.0};
  std::vector<double> edges_;
  std::vector<double> cum_;
};

}  // namespace

namespace detail {

class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  virtual double log_pdf(double x) const = 0;
  virtual double cdf(double x) const = 0;
  virtual double quantile(double u) const = 0;
  virtual std::optional<double> score(double) const { return std::nullopt; }
  virtual std::optional<double> kernel(double) const { return std::nullopt; }
  virtual bool has_score() const { return false; }
  virtual bool has_kernel() const { return false; }

  Family family = Family::Custom;
  std::vector<double> params;
  SupportInterval support;
  double mean = 0.0;
  double variance = 1.0;
  double log_norm = 0.0;
  Window window;
  std::string label;

 protected:
  void set_window(double tail_epsilon) {
    window.lo = support.lower_finite() ? support.lower() : quantile(tail_epsilon);
    window.hi = support.upper_finite() ? support.upper() : quantile(1.0 - tail_epsilon);
  }
};

namespace {

class NormalModel final : public DistributionModel {
 public:
  NormalModel(double mu, double sigma, double eps) : mu_(mu), sigma_(sigma) {
    require(std::isfinite(mu), "normal mean must be finite");
    require(finite_positive(sigma), "normal sigma must be positive");
    family = Family::Normal;
    params = {mu, sigma};
    support = SupportInterval::real_line();
    mean = mu;
    variance = sigma * sigma;
    set_window(eps);
  }
  double log_pdf(double x) const override {
    return special::normal_log_pdf((x - mu_) / sigma_) - std::log(sigma_);
  }
  double cdf(double x) const override { return special::normal_cdf((x - mu_) / sigma_); }
  double quantile(double u) const override { return mu_ + sigma_ * special::normal_quantile(u); }
  std::optional<double> score(double x) const override { return -(x - mu_) / (sigma_ * sigma_); }
  std::optional<double> kernel(double) const override { return sigma_ * sigma_; }
  bool has_score() const override { return true; }
  bool has_kernel() const override { return true; }

 private:
  double mu_;
  double sigma_;
};

class BetaModel final : public DistributionModel {
 public:
  BetaModel(double alpha, double beta, double eps) : a_(alpha), b_(beta) {
    require(finite_positive(alpha) && finite_positive(beta), "beta parameters must be positive");
    family = Family::Beta;
    params = {alpha, beta};
    support = SupportInterval(0.0, 1.0, alpha >= 1.0, beta >= 1.0);
    const double s = alpha + beta;
    mean = alpha / s;
    variance = alpha * beta / (s * s * (s + 1.0));
    log_beta_ = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(s);
    set_window(eps);
  }
  double log_pdf(double x) const override {
    if (x < 0.0 || x > 1.0) return kNegInf;
    return xlogy(a_ - 1.0, x) + xlog1py(b_ - 1.0, -x) - log_beta_;
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a_, b_, x);
  }
  double quantile(double u) const override { return boost::math::ibeta_inv(a_, b_, u); }
  std::optional<double> score(double x) const override {
    if (!(x > 0.0 && x < 1.0)) return std::nullopt;
    return (a_ - 1.0) / x - (b_ - 1.0) / (1.0 - x);
  }
  std::optional<double> kernel(double x) const override {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return x * (1.0 - x) / (a_ + b_);
  }
  bool has_score() const override { return true; }
  bool has_kernel() const override { return true; }

 private:
  double a_;
  double b_;
  double log_beta_;
};

class GammaModel final : public DistributionModel {
 public:
  GammaModel(double shape, double scale, double eps, Family tag) : k_(shape), scale_(scale) {
    require(finite_positive(shape), "gamma shape must be positive");
    require(finite_positive(scale), "gamma scale must be positive");
    family = tag;
    params = tag == Family::Exponential ? std::vector<double>{1.0 / scale} : std::vector<double>{shape, scale};
    support = SupportInterval(0.0, kInf, shape >= 1.0, false);
    mean = shape * scale;
    variance = shape * scale * scale;
    log_const_ = std::lgamma(shape) + shape * std::log(scale);
    set_window(eps);
  }
  double log_pdf(double x) const override {
    if (x < 0.0) return kNegInf;
    return xlogy(k_ - 1.0, x) - x / scale_ - log_const_;
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (family == Family::Exponential) return -std::expm1(-x / scale_);
    return boost::math::gamma_p(k_, x / scale_);
  }
  double quantile(double u) const override {
    if (family == Family::Exponential) return -scale_ * std::log1p(-u);
    return scale_ * boost::math::gamma_p_inv(k_, u);
  }
  std::optional<double> score(double x) const override {
    if (!(x > 0.0)) return std::nullopt;
    return (k_ - 1.0) / x - 1.0 / scale_;
  }
  std::optional<double> kernel(double x) const override {
    if (x <= 0.0) return 0.0;
    return scale_ * x;
  }
  bool has_score() const override { return true; }
  bool has_kernel() const override { return true; }

 private:
  double k_;
  double scale_;
  double log_const_;
};

class SkewNormalModel final : public DistributionModel {
 public:
  SkewNormalModel(double location, double scale, double shape, const QuadratureConfig& config)
      : xi_(location), omega_(scale), lambda_(shape) {
    require(std::isfinite(location), "skew-normal location must be finite");
    require(finite_positive(scale), "skew-normal scale must be positive");
    require(std::isfinite(shape), "skew-normal shape must be finite");
    family = Family::SkewNormal;
    params = {location, scale, shape};
    support = SupportInterval::real_line();
    const double delta = shape / std::sqrt(1.0 + shape * shape);
    mean = location + scale * delta * special::kSqrt2OverPi;
    variance = scale * scale * (1.0 - 2.0 * delta * delta / special::kPi);
    const double sd = std::sqrt(variance);
    table_.emplace([this](double x) { return log_pdf(x); }, support, config,
                   Window{mean - 10.0 * sd, mean + 10.0 * sd});
    set_window(config.tail_epsilon);
  }
  double log_pdf(double x) const override {
    const double z = (x - xi_) / omega_;
    return std::log(2.0) + special::normal_log_pdf(z) + special::normal_log_cdf(lambda_ * z) - std::log(omega_);
  }
  double cdf(double x) const override { return table_->cdf(x); }
  double quantile(double u) const override { return table_->quantile(u, 0.0); }
  std::optional<double> score(double x) const override {
    const double z = (x - xi_) / omega_;
    return (-z + lambda_ * special::normal_hazard_left(lambda_ * z)) / omega_;
  }
  bool has_score() const override { return true; }

 private:
  double xi_;
  double omega_;
  double lambda_;
  std::optional<NumericTable> table_;
};

class CustomModel final : public DistributionModel {
 public:
  CustomModel(std::function<double(double)> log_density, SupportInterval supp, const QuadratureConfig& config,
              std::optional<Window> hint, std::string name)
      : log_f_(std::move(log_density)) {
    family = Family::Custom;
    support = supp;
    label = std::move(name);
    table_.emplace(log_f_, support, config, hint);
    log_norm = table_->log_norm();
    mean = table_->mean();
    variance = table_->variance();
    set_window(config.tail_epsilon);
  }
  double log_pdf(double x) const override {
    if (!support.contains(x)) return kNegInf;
    const double lf = log_f_(x);
    return lf - log_norm;
  }
  double cdf(double x) const override { return table_->cdf(x); }
  double quantile(double u) const override { return table_->quantile(u, log_norm); }

 private:
  std::function<double(double)> log_f_;
  std::optional<NumericTable> table_;
};

}  // namespace
}  // namespace detail

Distribution::Distribution(std::shared_ptr<const detail::DistributionModel> model) : model_(std::move(model)) {}

Distribution Distribution::normal(double mu, double sigma) {
  return Distribution(std::make_shared<detail::NormalModel>(mu, sigma, QuadratureConfig{}.tail_epsilon));
}

Distribution Distribution::beta(double alpha, double beta) {
  return Distribution(std::make_shared<detail::BetaModel>(alpha, beta, QuadratureConfig{}.tail_epsilon));
}

Distribution Distribution::gamma(double shape, double scale) {
  return Distribution(
      std::make_shared<detail::GammaModel>(shape, scale, QuadratureConfig{}.tail_epsilon, Family::Gamma));
}

Distribution Distribution::exponential(double rate) {
  require(finite_positive(rate), "exponential rate must be positive");
  return Distribution(
      std::make_shared<detail::GammaModel>(1.0, 1.0 / rate, QuadratureConfig{}.tail_epsilon, Family::Exponential));
}

Distribution Distribution::skew_normal(double location, double scale, double shape, const QuadratureConfig& config) {
  return Distribution(std::make_shared<detail::SkewNormalModel>(location, scale, shape, config));
}

Distribution Distribution::make(Family family, std::span<const double> params, const QuadratureConfig& config) {
  auto expect = [&](std::size_t n) {
    if (params.size() != n) {
      throw Error(ErrorCode::InvalidParams, std::string(to_string(family)) + " expects " + std::to_string(n) +
                                                " parameters, got " + std::to_string(params.size()));
    }
  };
  for (double p : params) require(!std::isnan(p), "parameters must not be NaN");
  switch (family) {
    case Family::Normal: expect(2); return normal(params[0], params[1]);
    case Family::Beta: expect(2); return beta(params[0], params[1]);
    case Family::Gamma: expect(2); return gamma(params[0], params[1]);
    case Family::Exponential: expect(1); return exponential(params[0]);
    case Family::SkewNormal: expect(3); return skew_normal(params[0], params[1], params[2], config);
    case Family::Custom: break;
  }
  throw Error(ErrorCode::InvalidParams, "custom densities are not catalog families");
}

Distribution Distribution::custom(std::function<double(double)> log_density, SupportInterval support,
                                  const QuadratureConfig& config, std::optional<Window> hint, std::string label) {
  return Distribution(
      std::make_shared<detail::CustomModel>(std::move(log_density), support, config, hint, std::move(label)));
}

Distribution Distribution::custom_pdf(std::function<double(double)> density, SupportInterval support,
                                      const QuadratureConfig& config, std::optional<Window> hint,
                                      std::string label) {
  auto log_density = [density = std::move(density)](double x) {
    const double p = density(x);
    if (std::isnan(p) || p < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log(p);
  };
  return custom(std::move(log_density), support, config, hint, std::move(label));
}

Family Distribution::family() const noexcept { return model_->family; }
const std::vector<double>& Distribution::params() const noexcept { return model_->params; }

std::string Distribution::name() const {
  if (model_->family == Family::Custom) return model_->label;
  std::ostringstream os;
  os.precision(6);
  switch (model_->family) {
    case Family::Normal: os << "Normal"; break;
    case Family::Beta: os << "Beta"; break;
    case Family::Gamma: os << "Gamma"; break;
    case Family::Exponential: os << "Exponential"; break;
    case Family::SkewNormal: os << "SkewNormal"; break;
    case Family::Custom: break;
  }
  os << '(';
  for (std::size_t i = 0; i < model_->params.size(); ++i) os << (i ? ", " : "") << model_->params[i];
  os << ')';
  return os.str();
}

const SupportInterval& Distribution::support() const noexcept { return model_->support; }
double Distribution::log_pdf(double x) const { return model_->log_pdf(x); }
double Distribution::pdf(double x) const { return std::exp(model_->log_pdf(x)); }

double Distribution::cdf(double x) const {
  if (x <= model_->support.lower()) return 0.0;
  if (x >= model_->support.upper()) return 1.0;
  return model_->cdf(x);
}

double Distribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "quantile level must lie in (0, 1), got " + std::to_string(u));
  }
  return model_->quantile(u);
}

double Distribution::mean() const noexcept { return model_->mean; }
double Distribution::variance() const noexcept { return model_->variance; }
double Distribution::sd() const noexcept { return std::sqrt(model_->variance); }
std::optional<double> Distribution::score(double x) const { return model_->score(x); }
bool Distribution::has_analytic_score() const noexcept { return model_->has_score(); }
std::optional<double> Distribution::analytic_kernel(double x) const { return model_->kernel(x); }
bool Distribution::has_analytic_kernel() const noexcept { return model_->has_kernel(); }
const Window& Distribution::window() const noexcept { return model_->window; }
double Distribution::log_normalizer() const noexcept { return model_->log_norm; }

Window union_window(const Distribution& a, const Distribution& b, const SupportInterval& clip) {
  Window w{std::min(a.window().lo, b.window().lo), std::max(a.window().hi, b.window().hi)};
  w.lo = std::max(w.lo, clip.lower());
  w.hi = std::min(w.hi, clip.upper());
  return w;
}

}  // namespace steinbounds
