#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Core>

#include "ordrel/distributions.hpp"

namespace ordrel::testing {

/// Seeded generator for property tests. Every draw is logged into `trace`
/// so a failing case can be reproduced from the assertion message.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    const double v = std::uniform_real_distribution<double>(lo, hi)(rng_);
    trace += std::to_string(v) + " ";
    return v;
  }

  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  int integer(int lo, int hi) {
    const int v = std::uniform_int_distribution<int>(lo, hi)(rng_);
    trace += std::to_string(v) + " ";
    return v;
  }

  Eigen::VectorXd vector(int n, double lo, double hi) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Any non-reflected baseline.
  DistSpec lifetime() {
    switch (integer(0, 3)) {
      case 0: return DistSpec::exponential(log_uniform(0.2, 5.0));
      case 1: return DistSpec::weibull(uniform(0.3, 3.0), log_uniform(0.2, 5.0));
      case 2: return DistSpec::lomax(uniform(0.5, 5.0), log_uniform(0.3, 3.0));
      default: return DistSpec::pareto1(uniform(0.5, 4.0));
    }
  }

  /// Any baseline, reflected ones included.
  DistSpec any() { return integer(0, 4) == 0 ? DistSpec::reflected(lifetime()) : lifetime(); }

  std::string trace;

 private:
  std::mt19937_64 rng_;
};

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ordrel::testing
