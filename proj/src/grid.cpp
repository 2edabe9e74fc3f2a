#include "ordrel/grid.hpp"

#include <cmath>

#include "ordrel/errors.hpp"

namespace ordrel {

GridSpec GridSpec::x_grid(double lo, double hi, int n) {
  GridSpec g;
  g.kind = Kind::X;
  g.lo = lo;
  g.hi = hi;
  g.n = n;
  g.validate();
  return g;
}

GridSpec GridSpec::u_grid(double eps, int n) {
  GridSpec g;
  g.kind = Kind::U;
  g.eps = eps;
  g.n = n;
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (n < kMinGridPoints) throw DomainError("grid: at least 64 points required");
  if (!(tau_mono > 0.0) || !(tau_pt > 0.0)) throw DomainError("grid: tolerances must be positive");
  if (kind == Kind::U) {
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("grid: eps must lie in (0, 0.5)");
  } else {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw DomainError("grid: x-grid needs finite lo < hi");
    }
  }
}

Eigen::ArrayXd GridSpec::points() const {
  validate();
  if (kind == Kind::U) return Eigen::ArrayXd::LinSpaced(n, eps, 1.0 - eps);
  return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

}  // namespace ordrel
