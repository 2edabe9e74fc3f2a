#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

#include "ordrel/distributions.hpp"
#include "ordrel/grid.hpp"

namespace ordrel {

enum class GeneratorFamily { Independence, Clayton, Frank };

std::string to_string(GeneratorFamily f);

/// Archimedean generator psi with inverse phi.
///   Independence  psi(x) = exp(-x)
///   Clayton(t>0)  psi(x) = (1 + t x)^(-1/t)
///   Frank(t!=0)   psi(x) = -(1/t) log(1 - (1 - e^-t) e^-x)
/// Frank with t < 0 is only 2-monotone, so it is accepted for dim 2 only.
class GeneratorSpec {
 public:
  static GeneratorSpec independence(int dim);
  static GeneratorSpec clayton(double theta, int dim);
  static GeneratorSpec frank(double theta, int dim);

  GeneratorFamily family() const { return family_; }
  double theta() const { return theta_; }
  int dim() const { return dim_; }

  bool operator==(const GeneratorSpec&) const = default;

 private:
  GeneratorSpec() = default;

  GeneratorFamily family_ = GeneratorFamily::Independence;
  double theta_ = 0.0;
  int dim_ = 2;
};

/// phi(0): generators here have psi > 0 everywhere, so the inverse at 0 is +inf.
inline constexpr double kPhiAtZero = kInf;

/// psi(x) for x in [0, inf]; psi(inf) = 0.
double psi(const GeneratorSpec& g, double x);
/// phi(u) for u in [0, 1]; phi(0) = kPhiAtZero.
double phi(const GeneratorSpec& g, double u);
/// log psi(x), computed without forming psi when it would underflow.
double log_psi(const GeneratorSpec& g, double x);

/// psi(sum phi(u_k)).
double copula_value(const GeneratorSpec& g, const Eigen::VectorXd& u);

/// x-grid used for the log-convexity checks when none is given: [0, 20], 512 nodes.
GridSpec default_generator_grid();

/// Second differences of log psi across the grid are >= -tau (resp. <= tau),
/// tau = grid.tau_mono * max(1, |log psi|).
bool is_log_convex(const GeneratorSpec& g, const GridSpec& grid = default_generator_grid());
bool is_log_concave(const GeneratorSpec& g, const GridSpec& grid = default_generator_grid());

struct SuperAdditivity {
  bool holds = true;
  int pairs = 0;
  int failed_evaluations = 0;
  /// First violating pair: h(x + y) < h(x) + h(y) - tol.
  std::optional<double> x;
  std::optional<double> y;
  double sum = 0.0;       ///< h(x) + h(y)
  double combined = 0.0;  ///< h(x + y)
};

/// Grid used for super-additivity checks when none is given: [0, 10], 64 nodes.
GridSpec default_superadditivity_grid();

/// h(x + y) >= h(x) + h(y) - tau_pt * max(1, |.|) for grid nodes x, y with
/// x + y <= grid.hi. Non-finite evaluations make the check fail.
SuperAdditivity super_additive_check(const std::function<double(double)>& h,
                                     const GridSpec& grid = default_superadditivity_grid());

/// x -> phi_a(psi_b(x)).
std::function<double(double)> composition(const GeneratorSpec& a, const GeneratorSpec& b);

/// Location-shifted dependent lifetimes Y_k = X_k - shift_k with X_k ~ baseline,
/// joined by the Archimedean survival copula of `generator`.
struct ShiftedSystem {
  DistSpec baseline;
  Eigen::VectorXd shifts;
  GeneratorSpec generator;

  /// Throws DomainError unless generator.dim() == shifts.size().
  void validate() const;
  bool operator==(const ShiftedSystem&) const = default;
};

/// Survival of min Y_k: psi(sum phi(sf(x + shift_k))).
double J1(const ShiftedSystem& s, double x);
/// Survival of max Y_k: 1 - psi(sum phi(cdf(x + shift_k))).
double J2(const ShiftedSystem& s, double x);

/// Lifetime of the series arrangement of a ShiftedSystem (survival J1).
class DependentMinimum {
 public:
  explicit DependentMinimum(ShiftedSystem s);
  const ShiftedSystem& system() const { return s_; }

 private:
  ShiftedSystem s_;
};

/// Lifetime of the parallel arrangement of a ShiftedSystem (survival J2).
class DependentMaximum {
 public:
  explicit DependentMaximum(ShiftedSystem s);
  const ShiftedSystem& system() const { return s_; }

 private:
  ShiftedSystem s_;
};

Interval support(const DependentMinimum& d);
double sf(const DependentMinimum& d, double x);
double cdf(const DependentMinimum& d, double x);
double quantile(const DependentMinimum& d, double u);

Interval support(const DependentMaximum& d);
double sf(const DependentMaximum& d, double x);
double cdf(const DependentMaximum& d, double x);
double quantile(const DependentMaximum& d, double u);

}  // namespace ordrel
