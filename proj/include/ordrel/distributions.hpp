#pragma once

#include <limits>
#include <memory>
#include <string>

#include "ordrel/grid.hpp"

namespace ordrel {

enum class Family { Exponential, Weibull, Lomax, ParetoI, ReflectedDFR };

std::string to_string(Family f);

/// Baseline lifetime distribution.
///
/// Parameterizations (survival functions on the support):
///   Exponential(rate)        exp(-rate x),            x >= 0
///   Weibull(shape, rate)     exp(-rate x^shape),      x >= 0
///   Lomax(shape, scale)      (1 + x/scale)^(-shape),  x >= 0
///   ParetoI(shape)           x^(-shape),              x >= 1
///   ReflectedDFR(inner)      law of -X for X ~ inner; support (-hi, -lo]
///
/// The reflection turns a decreasing hazard on [0, inf) into an increasing
/// reversed hazard on (-inf, 0], since rev_hazard_{-X}(x) = hazard_X(-x).
///
/// Values are immutable; copies share the reflected inner spec.
class DistSpec {
 public:
  static DistSpec exponential(double rate);
  static DistSpec weibull(double shape, double rate);
  static DistSpec lomax(double shape, double scale);
  static DistSpec pareto1(double shape);
  static DistSpec reflected(const DistSpec& inner);

  Family family() const { return family_; }
  double shape() const { return shape_; }
  double rate() const { return rate_; }
  double scale() const { return scale_; }
  /// Only meaningful for ReflectedDFR.
  const DistSpec& inner() const;

  Interval support() const;

  bool operator==(const DistSpec& other) const;

 private:
  DistSpec() = default;

  Family family_ = Family::Exponential;
  double shape_ = 1.0;
  double rate_ = 1.0;
  double scale_ = 1.0;
  std::shared_ptr<const DistSpec> inner_;
};

/// Stand-in for +inf when a density diverges at a support edge.
inline constexpr double kUnboundedDensity = std::numeric_limits<double>::max();

struct Density {
  double value = 0.0;
  bool unbounded = false;
};

Interval support(const DistSpec& d);

double cdf(const DistSpec& d, double x);
double sf(const DistSpec& d, double x);
double log_cdf(const DistSpec& d, double x);
double log_sf(const DistSpec& d, double x);

/// Density with an explicit flag for a diverging edge (Weibull shape < 1 at 0).
Density density(const DistSpec& d, double x);
/// Density value; 0 outside the support, kUnboundedDensity where it diverges.
double pdf(const DistSpec& d, double x);

/// Right-continuous quantile for u in (0, 1).
double quantile(const DistSpec& d, double u);
/// The x with log sf(x) = log_s (log_s < 0).
double inverse_log_sf(const DistSpec& d, double log_s);
/// The x with log cdf(x) = log_u (log_u < 0).
double inverse_log_cdf(const DistSpec& d, double log_u);

/// pdf/sf. Zero left of the support; TailError(Right) where sf vanishes.
double hazard(const DistSpec& d, double x);
/// pdf/cdf. Zero right of the support; TailError(Left) where cdf vanishes.
double rev_hazard(const DistSpec& d, double x);

/// Polynomial tail exponents: sf(x) ~ x^-right as x -> inf and
/// cdf(x) ~ |x|^-left as x -> -inf. Infinite for light or bounded tails.
struct TailIndex {
  double left = kInf;
  double right = kInf;
};
TailIndex tail_index(const DistSpec& d);

/// Ageing flags decided numerically on a grid.
struct AgeingClass {
  bool ifr = false;
  bool dfr = false;
  bool irhr = false;
  bool drhr = false;
  GridSpec grid;
};

/// Classify hazard / reversed-hazard monotonicity. An x-grid is used as is and
/// must lie inside the support; a u-grid is mapped through the quantile
/// function. Adjacent increments are compared with grid.tau_mono relative slack.
///
/// The classes refer to the lifetime half-line: when the support starts above
/// 0 (Pareto-I) the hazard is 0 on [0, lo) and that value leads the sequence,
/// so such a law is never DFR. Mirrored, a support ending below 0 has reversed
/// hazard 0 on (hi, 0], which closes the sequence and rules out IRHR.
AgeingClass classify_ageing(const DistSpec& d, const GridSpec& grid);

/// Grid used when the caller does not supply one: u-grid image, eps = 1e-4.
GridSpec default_ageing_grid();

}  // namespace ordrel
