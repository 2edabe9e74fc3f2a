#pragma once

#include <Eigen/Core>
#include <limits>

namespace ordrel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed support interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool interior(double x) const { return x > lo && x < hi; }
  bool operator==(const Interval&) const = default;
};

/// Evaluation grid for the numerical order checkers.
///
/// An x-grid is a linear grid on [lo, hi]; a u-grid is a linear grid on
/// [eps, 1 - eps] in probability space. Both carry the two tolerances every
/// checker uses:
///   - tau_mono: adjacent increments may dip by tau_mono * max(1, |v|)
///   - tau_pt:   pointwise comparisons may be off by tau_pt * max(1, |lhs|, |rhs|)
struct GridSpec {
  enum class Kind { X, U };

  Kind kind = Kind::U;
  double lo = 0.0;
  double hi = 1.0;
  double eps = 1e-3;
  int n = 512;
  double tau_mono = 1e-9;
  double tau_pt = 1e-9;

  static GridSpec x_grid(double lo, double hi, int n = 512);
  static GridSpec u_grid(double eps = 1e-3, int n = 512);

  /// Throws DomainError when an invariant is broken (n < 64, bad eps, lo >= hi,
  /// non-positive tolerances).
  void validate() const;

  /// Grid nodes: x values for an x-grid, probabilities for a u-grid.
  Eigen::ArrayXd points() const;

  bool operator==(const GridSpec&) const = default;
};

inline constexpr int kMinGridPoints = 64;

}  // namespace ordrel
