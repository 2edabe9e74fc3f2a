#include "ordrel/systems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordrel/errors.hpp"
#include "ordrel/numerics.hpp"

namespace ordrel {

namespace {

bool is_series(const SystemSpec& s) { return s.kind() == SystemKind::SeriesPHR; }

void require_kind(const SystemSpec& s, SystemKind kind, const char* op) {
  if (s.kind() != kind) throw DomainError(std::string(op) + ": wrong system kind");
}

std::vector<Component> expand(const DistSpec& baseline, const Eigen::VectorXd& props) {
  std::vector<Component> out;
  out.reserve(static_cast<std::size_t>(props.size()));
  for (Eigen::Index i = 0; i < props.size(); ++i) out.push_back({baseline, props[i]});
  return out;
}

double sum_log_sf(const SystemSpec& s, double x) {
  double acc = 0.0;
  for (const auto& c : s.components()) {
    const double l = log_sf(c.baseline, x);
    if (l == -kInf) return -kInf;
    acc += c.prop * l;
  }
  return acc;
}

double sum_log_cdf(const SystemSpec& s, double x) {
  double acc = 0.0;
  for (const auto& c : s.components()) {
    const double l = log_cdf(c.baseline, x);
    if (l == -kInf) return -kInf;
    acc += c.prop * l;
  }
  return acc;
}

bool lomax_closed_form_applies(const SystemSpec& s) {
  const auto& cs = s.components();
  const double theta = cs.front().baseline.family() == Family::Lomax ? cs.front().baseline.scale() : 0.0;
  return std::all_of(cs.begin(), cs.end(), [&](const Component& c) {
    return c.baseline.family() == Family::Lomax && c.baseline.scale() == theta && c.prop == 1.0;
  });
}

void require_positive_vector(const Eigen::VectorXd& v, const char* what) {
  if (v.size() == 0) throw DomainError(std::string(what) + ": empty parameter vector");
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + ": parameters must be positive");
  }
}

}  // namespace

SystemSpec::SystemSpec(SystemKind kind, std::vector<Component> components, std::optional<std::size_t> split)
    : kind_(kind), components_(std::move(components)), split_(split) {
  if (components_.empty()) throw DomainError("SystemSpec: no components");
  for (const auto& c : components_) {
    if (!(c.prop > 0.0) || !std::isfinite(c.prop)) throw DomainError("SystemSpec: prop must be positive");
  }
  if (split_) {
    const std::size_t p = *split_;
    if (p == 0 || p >= components_.size()) throw DomainError("SystemSpec: split must leave both blocks non-empty");
    for (std::size_t i = 1; i < components_.size(); ++i) {
      const std::size_t head = i < p ? 0 : p;
      if (!(components_[i].baseline == components_[head].baseline)) {
        throw DomainError("SystemSpec: components within a block must share a baseline");
      }
    }
  }
}

SystemSpec SystemSpec::series(const DistSpec& baseline, const Eigen::VectorXd& props) {
  return SystemSpec(SystemKind::SeriesPHR, expand(baseline, props));
}

SystemSpec SystemSpec::parallel(const DistSpec& baseline, const Eigen::VectorXd& props) {
  return SystemSpec(SystemKind::ParallelPRHR, expand(baseline, props));
}

SystemSpec SystemSpec::mixed(SystemKind kind, const DistSpec& front, const Eigen::VectorXd& front_props,
                             const DistSpec& back, const Eigen::VectorXd& back_props) {
  auto cs = expand(front, front_props);
  auto tail = expand(back, back_props);
  cs.insert(cs.end(), tail.begin(), tail.end());
  return SystemSpec(kind, std::move(cs), static_cast<std::size_t>(front_props.size()));
}

bool SystemSpec::same_baseline() const {
  return std::all_of(components_.begin(), components_.end(),
                     [&](const Component& c) { return c.baseline == components_.front().baseline; });
}

Eigen::VectorXd SystemSpec::props() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(components_.size()));
  for (std::size_t i = 0; i < components_.size(); ++i) out[static_cast<Eigen::Index>(i)] = components_[i].prop;
  return out;
}

double SystemSpec::prop_sum() const { return props().sum(); }

double SystemSpec::front_sum() const {
  if (!split_) throw DomainError("front_sum: system has no split");
  return props().head(static_cast<Eigen::Index>(*split_)).sum();
}

double SystemSpec::back_sum() const {
  if (!split_) throw DomainError("back_sum: system has no split");
  return props().tail(static_cast<Eigen::Index>(components_.size() - *split_)).sum();
}

OrderStatDist::OrderStatDist(SystemSpec system) : system_(std::move(system)) {
  const auto& cs = system_.components();
  Interval s = cs.front().baseline.support();
  for (const auto& c : cs) {
    const Interval t = c.baseline.support();
    if (is_series(system_)) {
      s.lo = std::min(s.lo, t.lo);
      s.hi = std::min(s.hi, t.hi);
    } else {
      s.lo = std::max(s.lo, t.lo);
      s.hi = std::max(s.hi, t.hi);
    }
  }
  support_ = s;
}

double min_sf(const SystemSpec& s, double x) {
  require_kind(s, SystemKind::SeriesPHR, "min_sf");
  return std::exp(sum_log_sf(s, x));
}

double max_cdf(const SystemSpec& s, double x) {
  require_kind(s, SystemKind::ParallelPRHR, "max_cdf");
  return std::exp(sum_log_cdf(s, x));
}

double min_hazard(const SystemSpec& s, double x) {
  require_kind(s, SystemKind::SeriesPHR, "min_hazard");
  double acc = 0.0;
  for (const auto& c : s.components()) acc += c.prop * hazard(c.baseline, x);
  return acc;
}

double max_rev_hazard(const SystemSpec& s, double x) {
  require_kind(s, SystemKind::ParallelPRHR, "max_rev_hazard");
  if (x > 0.0 && lomax_closed_form_applies(s)) {
    const Eigen::VectorXd alphas = [&] {
      Eigen::VectorXd a(static_cast<Eigen::Index>(s.size()));
      for (std::size_t i = 0; i < s.size(); ++i) a[static_cast<Eigen::Index>(i)] = s.components()[i].baseline.shape();
      return a;
    }();
    return lomax_parallel_rev_hazard(alphas, s.components().front().baseline.scale(), x);
  }
  double acc = 0.0;
  for (const auto& c : s.components()) acc += c.prop * rev_hazard(c.baseline, x);
  return acc;
}

// The three closed forms below are divided through by powers of u^alpha so that
// large alpha * ln(u) cannot overflow; w = u^-alpha, s = alpha ln u.
double lomax_g(double alpha, double u) {
  if (!(u > 1.0)) throw DomainError("lomax_g: u must exceed 1");
  const double s = alpha * std::log(u);
  return alpha * std::exp(-s) / -std::expm1(-s);
}

double lomax_g_prime(double alpha, double u) {
  if (!(u > 1.0)) throw DomainError("lomax_g_prime: u must exceed 1");
  // (u^a (1 - a ln u) - 1) / (u^a - 1)^2
  const double s = alpha * std::log(u);
  const double w = std::exp(-s);
  const double d = -std::expm1(-s);
  return w * (1.0 - s - w) / (d * d);
}

double lomax_g_second(double alpha, double u) {
  if (!(u > 1.0)) throw DomainError("lomax_g_second: u must exceed 1");
  // u^a ln u ((u^a ln u + ln u) a - 2 u^a + 2) / (u^a - 1)^3
  const double lu = std::log(u);
  const double s = alpha * lu;
  const double w = std::exp(-s);
  const double d = -std::expm1(-s);
  return lu * w * (s * (1.0 + w) - 2.0 * d) / (d * d * d);
}

double lomax_parallel_rev_hazard(const Eigen::VectorXd& alphas, double theta, double x) {
  require_positive_vector(alphas, "lomax_parallel_rev_hazard");
  if (!(theta > 0.0)) throw DomainError("lomax_parallel_rev_hazard: theta must be positive");
  if (!(x > 0.0)) throw DomainError("lomax_parallel_rev_hazard: x must be positive");
  const double u = 1.0 + x / theta;
  double acc = 0.0;
  for (double a : alphas) acc += lomax_g(a, u);
  return acc / (x + theta);
}

double weibull_min_variance(const Eigen::VectorXd& ks, double shape) {
  require_positive_vector(ks, "weibull_min_variance");
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("weibull_min_variance: shape must be positive");
  const double g1 = gamma_function(1.0 / shape + 1.0);
  return std::pow(1.0 / ks.sum(), 2.0 / shape) * (gamma_function(2.0 / shape + 1.0) - g1 * g1);
}

Moments lomax_min_moments(const Eigen::VectorXd& alphas) {
  require_positive_vector(alphas, "lomax_min_moments");
  const double s = alphas.sum();
  if (!(s > 1.0)) throw MomentUndefinedError(1, s, "lomax_min_moments: mean needs sum alpha > 1, got " + std::to_string(s));
  if (!(s > 2.0)) {
    throw MomentUndefinedError(2, s, "lomax_min_moments: variance needs sum alpha > 2, got " + std::to_string(s));
  }
  const double m = s - 1.0;
  return {1.0 / m, s / ((s - 2.0) * m * m)};
}

Interval support(const OrderStatDist& o) { return o.support(); }

double log_sf(const OrderStatDist& o, double x) {
  if (std::isnan(x)) throw DomainError("log_sf: NaN argument");
  const auto& s = o.system();
  if (is_series(s)) return sum_log_sf(s, x);
  return log1mexp(sum_log_cdf(s, x));
}

double log_cdf(const OrderStatDist& o, double x) {
  if (std::isnan(x)) throw DomainError("log_cdf: NaN argument");
  const auto& s = o.system();
  if (is_series(s)) return log1mexp(sum_log_sf(s, x));
  return sum_log_cdf(s, x);
}

double sf(const OrderStatDist& o, double x) {
  const auto& s = o.system();
  if (is_series(s)) return min_sf(s, x);
  return -std::expm1(sum_log_cdf(s, x));
}

double cdf(const OrderStatDist& o, double x) {
  const auto& s = o.system();
  if (is_series(s)) return -std::expm1(sum_log_sf(s, x));
  return max_cdf(s, x);
}

Density density(const OrderStatDist& o, double x) {
  if (std::isnan(x)) throw DomainError("density: NaN argument");
  const Interval supp = o.support();
  if (x < supp.lo || x > supp.hi) return {};
  const auto& s = o.system();
  for (const auto& c : s.components()) {
    if (density(c.baseline, x).unbounded) return {kUnboundedDensity, true};
  }
  if (is_series(s)) {
    const double ls = sum_log_sf(s, x);
    if (ls == -kInf) return {};
    double acc = 0.0;
    for (const auto& c : s.components()) acc += c.prop * hazard(c.baseline, x);
    return {acc * std::exp(ls), false};
  }
  const double lc = sum_log_cdf(s, x);
  if (lc == -kInf) return {};
  double acc = 0.0;
  for (const auto& c : s.components()) acc += c.prop * rev_hazard(c.baseline, x);
  return {acc * std::exp(lc), false};
}

double pdf(const OrderStatDist& o, double x) { return density(o, x).value; }

double quantile(const OrderStatDist& o, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
  const auto& s = o.system();
  const DistSpec& b = s.components().front().baseline;
  const double total = s.prop_sum();
  if (s.same_baseline()) {
    if (is_series(s)) return inverse_log_sf(b, std::log1p(-u) / total);
    return inverse_log_cdf(b, std::log(u) / total);
  }
  const double guess = quantile(b, u);
  return bisect_quantile([&](double x) { return cdf(o, x); }, u, o.support(), guess);
}

double hazard(const OrderStatDist& o, double x) {
  if (std::isnan(x)) throw DomainError("hazard: NaN argument");
  const auto& s = o.system();
  if (is_series(s)) return min_hazard(s, x);
  if (x < o.support().lo) return 0.0;
  const double lc = sum_log_cdf(s, x);
  const double denom = std::expm1(-lc);
  if (!(denom > 0.0)) throw TailError(Tail::Right, "hazard: survival function vanishes");
  return max_rev_hazard(s, x) / denom;
}

double rev_hazard(const OrderStatDist& o, double x) {
  if (std::isnan(x)) throw DomainError("rev_hazard: NaN argument");
  const auto& s = o.system();
  if (!is_series(s)) return max_rev_hazard(s, x);
  if (x > o.support().hi) return 0.0;
  const double ls = sum_log_sf(s, x);
  const double denom = std::expm1(-ls);
  if (!(denom > 0.0)) throw TailError(Tail::Left, "rev_hazard: distribution function vanishes");
  return min_hazard(s, x) / denom;
}

TailIndex tail_index(const OrderStatDist& o) {
  const auto& s = o.system();
  TailIndex out;
  if (is_series(s)) {
    // sf of the min is a product: right exponents add; its cdf is driven by
    // the heaviest left tail.
    out.right = 0.0;
    for (const auto& c : s.components()) {
      const TailIndex t = tail_index(c.baseline);
      out.right += c.prop * t.right;
      out.left = std::min(out.left, t.left);
    }
  } else {
    out.left = 0.0;
    for (const auto& c : s.components()) {
      const TailIndex t = tail_index(c.baseline);
      out.left += c.prop * t.left;
      out.right = std::min(out.right, t.right);
    }
  }
  return out;
}

namespace {

// int_a^hi f. An infinite upper end is split at c > a and the tail is
// mapped through x = c e^s, which turns algebraic decay into exponential decay.
Integral half_line_integral(const std::function<double(double)>& f, double a, double hi, double rel_tol) {
  if (std::isfinite(hi)) return integrate(f, a, hi, rel_tol);
  const double c = a + std::max(1.0, std::abs(a));
  const Integral body = integrate(f, a, c, rel_tol);
  const Integral tail = integrate(
      [&](double t) {
        const double x = c * std::exp(t);
        return std::isfinite(x) ? f(x) * x : 0.0;
      },
      0.0, kInf, rel_tol);
  return {body.value + tail.value, body.error + tail.error};
}

}  // namespace

double numeric_moments(const OrderStatDist& o, int order) {
  if (order != 1 && order != 2) throw DomainError("numeric_moments: order must be 1 or 2");
  const TailIndex ti = tail_index(o);
  const double k = order;
  if (!(ti.right > k)) {
    throw MomentUndefinedError(order, ti.right, "numeric_moments: right tail exponent " + std::to_string(ti.right) +
                                                    " does not exceed the order");
  }
  if (!(ti.left > k)) {
    throw MomentUndefinedError(order, ti.left, "numeric_moments: left tail exponent " + std::to_string(ti.left) +
                                                   " does not exceed the order");
  }

  // E[X^k] = E[(X+)^k] + (-1)^k E[(X-)^k], each a tail integral
  // int k y^(k-1) P(|X| > y) dy over the part of the half-line where the
  // probability is not identically one.
  const Interval s = o.support();
  constexpr double kRelTol = 1e-9;
  double err = 0.0;
  double pos = 0.0;
  if (s.hi > 0.0) {
    const double a = std::max(s.lo, 0.0);
    const auto r =
        half_line_integral([&](double x) { return k * std::pow(x, k - 1.0) * sf(o, x); }, a, s.hi, kRelTol);
    pos = std::pow(a, k) + r.value;
    err += r.error;
  }
  double neg = 0.0;
  if (s.lo < 0.0) {
    const double b = std::max(-s.hi, 0.0);
    const auto r =
        half_line_integral([&](double y) { return k * std::pow(y, k - 1.0) * cdf(o, -y); }, b, -s.lo, kRelTol);
    neg = std::pow(b, k) + r.value;
    err += r.error;
  }
  const double value = pos + (order % 2 == 0 ? neg : -neg);
  if (!std::isfinite(value) || err > 1e-6 * std::max(1e-12, pos + neg)) {
    throw MomentUndefinedError(order, std::min(ti.left, ti.right), "numeric_moments: quadrature did not converge");
  }
  return value;
}

double numeric_variance(const OrderStatDist& o) {
  const double m1 = numeric_moments(o, 1);
  return numeric_moments(o, 2) - m1 * m1;
}

}  // namespace ordrel
