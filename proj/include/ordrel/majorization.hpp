#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace ordrel {

/// Parameter vectors are plain Eigen vectors; relations require equal lengths >= 2.
using ParamVector = Eigen::VectorXd;

/// a is majorized by b: equal sums, and every ascending partial sum of a is
/// at least the corresponding one of b.
bool majorizes(const ParamVector& a, const ParamVector& b);
/// a is weakly submajorized by b: descending partial sums of a never exceed b's.
bool weak_submajorizes(const ParamVector& a, const ParamVector& b);
/// a is weakly supermajorized by b: ascending partial sums of a are at least b's.
bool weak_supermajorizes(const ParamVector& a, const ParamVector& b);

using ScalarFn = std::function<double(const ParamVector&)>;

/// Axis-aligned sampling region.
struct Box {
  ParamVector lo;
  ParamVector hi;

  /// [lo, hi]^n
  static Box cube(Eigen::Index n, double lo, double hi);
  Eigen::Index dim() const { return lo.size(); }
};

enum class SchurMode { Convex, Concave };
enum class Monotonicity { Increasing, Decreasing };
enum class CertVerdict { Certified, Refuted, Inconclusive };

std::string to_string(SchurMode m);
std::string to_string(Monotonicity m);
std::string to_string(CertVerdict v);

struct SchurOptions {
  int samples = 256;
  std::uint64_t seed = 20240611;
  int symmetry_checks = 16;
};

/// Outcome of sampling Delta = (a_i - a_j)(d_i f - d_j f) over a box.
/// "Certified" only means no sampled pair violated the sign condition.
struct SchurCertificate {
  SchurMode mode = SchurMode::Convex;
  CertVerdict verdict = CertVerdict::Inconclusive;
  int samples = 0;
  int pairs = 0;
  int failed_evaluations = 0;
  double min_delta = 0.0;
  double max_delta = 0.0;
  std::optional<ParamVector> witness;
  int witness_i = -1;
  int witness_j = -1;
  double witness_delta = 0.0;
};

/// Schur-convexity (or concavity) by central differences with step
/// 1e-5 * (1 + |a_i|) at seeded uniform samples of `region`. Symmetry of f is
/// spot-checked on random permutations first; a failure throws PreconditionError.
SchurCertificate schur_certify(const ScalarFn& f, const Box& region, SchurMode mode,
                               const SchurOptions& opts = {});

struct MonotoneCertificate {
  Monotonicity direction = Monotonicity::Increasing;
  CertVerdict verdict = CertVerdict::Inconclusive;
  int samples = 0;
  int failed_evaluations = 0;
  std::optional<ParamVector> witness;
  int witness_i = -1;
  double witness_slope = 0.0;
};

/// Coordinatewise monotonicity from the signs of central-difference partials.
MonotoneCertificate monotone_certify(const ScalarFn& f, const Box& region, Monotonicity direction,
                                     const SchurOptions& opts = {});

enum class WeakRelation { Sub, Super };

/// Result of applying the weak-majorization transfer rule:
///   increasing + Schur-convex, a weakly submajorized by b   => f(a) <= f(b)
///   decreasing + Schur-convex, a weakly supermajorized by b => f(a) <= f(b)
/// and the mirrored conclusions (f(a) >= f(b)) for Schur-concave f.
struct ImplicationResult {
  SchurCertificate schur;
  MonotoneCertificate increasing;
  MonotoneCertificate decreasing;
  bool sub = false;    ///< a weakly submajorized by b
  bool super = false;  ///< a weakly supermajorized by b
  /// -1: f(a) <= f(b) implied; +1: f(a) >= f(b) implied; empty: no rule applies.
  std::optional<int> implied;
  std::optional<WeakRelation> used;
  double fa = 0.0;
  double fb = 0.0;
  /// The implied inequality re-evaluated directly (true when nothing is implied).
  bool confirmed = true;
};

/// Certifies the Schur property in `mode` and both monotonicity directions on
/// the cube spanned by the entries of a and b, then applies the transfer rule.
ImplicationResult monotone_schur_implication(const ScalarFn& f, const ParamVector& a, const ParamVector& b,
                                             SchurMode mode, const SchurOptions& opts = {});

}  // namespace ordrel
