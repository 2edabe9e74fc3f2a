#pragma once

#include <functional>

#include "ordrel/grid.hpp"

namespace ordrel {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below 1/2. Relative accuracy is about 1e-15 on [0.5, 10].
double gamma_function(double x);

/// log(1 - exp(a)) for a <= 0, accurate across the whole range.
double log1mexp(double a);

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of f over [lo, hi]; infinite ends are
/// mapped onto a finite interval before subdivision.
Integral integrate(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol = 1e-10, unsigned max_depth = 20);

struct BisectionOptions {
  double u_tol = 1e-12;
  double x_tol = 1e-10;
  int max_iter = 400;
};

/// Root of a non-decreasing function g - target inside [lo, hi], where
/// g(lo) <= target <= g(hi). Stops when |g(mid) - target| <= u_tol or the
/// bracket is narrower than x_tol * max(1, |mid|), whichever happens first.
double bisect(const std::function<double(double)>& g, double target, double lo, double hi,
              const BisectionOptions& opts = {});

/// Generalized inverse of a cdf: grows a bracket geometrically around `guess`
/// (clamped to the support) until it straddles u, then bisects.
double bisect_quantile(const std::function<double(double)>& cdf, double u, Interval support,
                       double guess, const BisectionOptions& opts = {});

}  // namespace ordrel
