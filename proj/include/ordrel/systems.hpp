#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ordrel/distributions.hpp"

namespace ordrel {

enum class SystemKind {
  SeriesPHR,     ///< minimum; component i has sf = sf_baseline^prop_i
  ParallelPRHR,  ///< maximum; component i has cdf = cdf_baseline^prop_i
};

struct Component {
  DistSpec baseline;
  double prop = 1.0;
  bool operator==(const Component&) const = default;
};

/// Independent heterogeneous components arranged in series (minimum) or in
/// parallel (maximum).
///
/// With a split index p, components [0, p) share one baseline and [p, n)
/// share another; the block sums of the proportionality parameters are then
/// all that matter for the hypotheses of the mixed-baseline results.
class SystemSpec {
 public:
  SystemSpec(SystemKind kind, std::vector<Component> components,
             std::optional<std::size_t> split = std::nullopt);

  static SystemSpec series(const DistSpec& baseline, const Eigen::VectorXd& props);
  static SystemSpec parallel(const DistSpec& baseline, const Eigen::VectorXd& props);
  /// Front block on `front`, back block on `back`, split at front_props.size().
  static SystemSpec mixed(SystemKind kind, const DistSpec& front, const Eigen::VectorXd& front_props,
                          const DistSpec& back, const Eigen::VectorXd& back_props);

  SystemKind kind() const { return kind_; }
  const std::vector<Component>& components() const { return components_; }
  std::optional<std::size_t> split() const { return split_; }
  std::size_t size() const { return components_.size(); }

  /// True when every component has the same baseline.
  bool same_baseline() const;
  Eigen::VectorXd props() const;
  double prop_sum() const;
  /// Sum over [0, split); requires a split.
  double front_sum() const;
  /// Sum over [split, n); requires a split.
  double back_sum() const;

  bool operator==(const SystemSpec&) const = default;

 private:
  SystemKind kind_;
  std::vector<Component> components_;
  std::optional<std::size_t> split_;
};

/// Distribution of the system lifetime: the sample minimum for a series
/// system, the maximum for a parallel one.
class OrderStatDist {
 public:
  explicit OrderStatDist(SystemSpec system);

  const SystemSpec& system() const { return system_; }
  Interval support() const { return support_; }

  bool operator==(const OrderStatDist&) const = default;

 private:
  SystemSpec system_;
  Interval support_;
};

Interval support(const OrderStatDist& o);
double cdf(const OrderStatDist& o, double x);
double sf(const OrderStatDist& o, double x);
double log_cdf(const OrderStatDist& o, double x);
double log_sf(const OrderStatDist& o, double x);
Density density(const OrderStatDist& o, double x);
double pdf(const OrderStatDist& o, double x);
/// Closed form for single-baseline systems, bisection otherwise.
double quantile(const OrderStatDist& o, double u);
double hazard(const OrderStatDist& o, double x);
double rev_hazard(const OrderStatDist& o, double x);
TailIndex tail_index(const OrderStatDist& o);

/// Survival of a series system: prod sf_i(x)^prop_i.
double min_sf(const SystemSpec& s, double x);
/// Distribution function of a parallel system: prod cdf_i(x)^prop_i.
double max_cdf(const SystemSpec& s, double x);
/// sum prop_i * hazard_i(x) of a series system.
double min_hazard(const SystemSpec& s, double x);
/// sum prop_i * rev_hazard_i(x) of a parallel system.
double max_rev_hazard(const SystemSpec& s, double x);

/// alpha / (u^alpha - 1), u > 1: one component's contribution to the
/// reversed hazard of a maximum of Lomax(alpha, theta) lifetimes, where
/// u = 1 + x/theta.
double lomax_g(double alpha, double u);
/// d/dalpha of lomax_g, closed form.
double lomax_g_prime(double alpha, double u);
/// d^2/dalpha^2 of lomax_g, closed form.
double lomax_g_second(double alpha, double u);

/// Reversed hazard of max(X_1..X_n), X_i ~ Lomax(alphas_i, theta):
/// (1/(x + theta)) * sum lomax_g(alpha_i, 1 + x/theta). Requires x > 0.
double lomax_parallel_rev_hazard(const Eigen::VectorXd& alphas, double theta, double x);

/// Variance of the minimum of Weibull(shape, k_i) lifetimes:
/// (1/sum k)^(2/shape) * (G(2/shape + 1) - G(1/shape + 1)^2).
double weibull_min_variance(const Eigen::VectorXd& ks, double shape);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of the minimum of Lomax(alpha_i, 1) lifetimes.
/// Throws MomentUndefinedError unless sum alpha > 2.
Moments lomax_min_moments(const Eigen::VectorXd& alphas);

/// E[X^order] by adaptive quadrature of the tail integrals
/// int order y^(order-1) sf(y) dy (and the cdf counterpart on the negative axis).
/// Throws MomentUndefinedError when a tail is too heavy or the integral fails
/// to converge.
double numeric_moments(const OrderStatDist& o, int order);
double numeric_variance(const OrderStatDist& o);

}  // namespace ordrel
