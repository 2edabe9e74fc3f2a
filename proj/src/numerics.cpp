#include "ordrel/numerics.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "ordrel/errors.hpp"

namespace ordrel {

double gamma_function(double x) {
  static constexpr double kG = 7.0;
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

  if (!std::isfinite(x)) throw DomainError("gamma_function: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_function: pole at non-positive integer");

  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_function(1.0 - x));
  }
  const double z = x - 1.0;
  double series = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) series += kCoef[i] / (z + static_cast<double>(i));
  const double t = z + kG + 0.5;
  // t^(z+1/2) e^(-t) split in two halves to postpone overflow for large x.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * series;
}

double log1mexp(double a) {
  if (a > 0.0) throw DomainError("log1mexp: argument must be <= 0");
  if (a == 0.0) return -kInf;
  return a > -std::numbers::ln2 ? std::log(-std::expm1(a)) : std::log1p(-std::exp(a));
}

Integral integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                   unsigned max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  Integral out;
  out.value = gauss_kronrod<double, 15>::integrate(f, lo, hi, max_depth, rel_tol, &out.error);
  return out;
}

double bisect(const std::function<double(double)>& g, double target, double lo, double hi,
              const BisectionOptions& opts) {
  if (!(lo <= hi)) throw DomainError("bisect: empty bracket");
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    const double v = g(mid);
    if (std::abs(v - target) <= opts.u_tol) return mid;
    if (hi - lo <= opts.x_tol * std::max(1.0, std::abs(mid))) return mid;
    if (v < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double bisect_quantile(const std::function<double(double)>& cdf, double u, Interval support,
                       double guess, const BisectionOptions& opts) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("bisect_quantile: u must lie in (0, 1)");
  if (!std::isfinite(guess)) throw DomainError("bisect_quantile: guess must be finite");
  guess = std::clamp(guess, support.lo, support.hi);

  double lo = guess;
  double hi = guess;
  double step = std::max(1.0, std::abs(guess));
  for (int it = 0; cdf(hi) < u; ++it) {
    if (hi >= support.hi || it > 2000) throw DomainError("bisect_quantile: could not bracket from above");
    lo = hi;
    hi = std::min(support.hi, hi + step);
    step *= 2.0;
  }
  step = std::max(1.0, std::abs(guess));
  for (int it = 0; cdf(lo) > u; ++it) {
    if (lo <= support.lo || it > 2000) throw DomainError("bisect_quantile: could not bracket from below");
    hi = std::min(hi, lo);
    lo = std::max(support.lo, lo - step);
    step *= 2.0;
  }
  return bisect(cdf, u, lo, hi, opts);
}

}  // namespace ordrel
