#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ordrel/copulas.hpp"
#include "ordrel/distributions.hpp"
#include "ordrel/majorization.hpp"
#include "ordrel/orders.hpp"
#include "ordrel/systems.hpp"

namespace ordrel {

enum class TheoremId { T1, C1, T2, C2, T3, T4, T5, T6, T7, T8, Ex1, Ex2 };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

/// X system vs Y system (T1, T2, T3, T4, T5).
struct SystemPair {
  SystemSpec x;
  SystemSpec y;
};

/// p copies of a1 followed by q copies of a2.
struct OutlierBlocks {
  int p = 1;
  double a1 = 1.0;
  int q = 1;
  double a2 = 1.0;

  Eigen::VectorXd expand() const;
};

/// Multiple-outlier pair (C1 series, C2 parallel): X on f0, Y on g0.
struct OutlierScenario {
  DistSpec f0;
  DistSpec g0;
  OutlierBlocks x;
  OutlierBlocks y;
};

/// Parallel systems of Lomax(alpha_i, theta) and Lomax(alpha_star_i, theta) (T6).
struct LomaxPair {
  double theta = 1.0;
  ParamVector alpha;
  ParamVector alpha_star;
};

enum class Branch { LogConvex, LogConcave };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

/// Dependent shifted systems (T7, T8): Y uses (F, mu, psi1), Z uses (G, mu*, psi2).
/// The branch is part of the case and never inferred.
struct ShiftedPair {
  ShiftedSystem y;
  ShiftedSystem z;
  Branch branch = Branch::LogConvex;
};

/// Minima of Weibull(shape, k_i) vs Weibull(shape, k_star_i) with reference variances.
struct WeibullExample {
  double shape = 0.7;
  ParamVector k;
  ParamVector k_star;
  double expected_x = 0.0;
  double expected_y = 0.0;
};

/// Minima of Lomax(alpha_i, 1) vs Lomax(alpha_star_i, 1) with reference variances.
struct LomaxExample {
  ParamVector alpha;
  ParamVector alpha_star;
  double expected_x = 0.0;
  double expected_y = 0.0;
};

using Scenario = std::variant<SystemPair, OutlierScenario, LomaxPair, ShiftedPair, WeibullExample, LomaxExample>;

/// A theorem instance. Optional grids override the defaults: `ugrid` is used for
/// every probability-space check (and the ageing hypotheses classified on it),
/// `xgrid` for the conclusion when that is an x-grid check.
struct TheoremCase {
  TheoremId id;
  Scenario scenario;
  std::optional<GridSpec> xgrid;
  std::optional<GridSpec> ugrid;
  std::string label;
};

struct Condition {
  std::string name;
  bool satisfied = false;
  std::string detail;
};

/// A computed value against a reference, relative tolerance.
struct ValueCheck {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

struct Conclusion {
  std::string statement;
  std::optional<OrderVerdict> verdict;
  std::vector<ValueCheck> values;
  Outcome outcome = Outcome::Inconclusive;
};

struct TheoremReport {
  explicit TheoremReport(TheoremCase c) : scenario(std::move(c)) {}

  TheoremCase scenario;
  bool hypothesis_satisfied = false;
  std::vector<Condition> hypothesis;
  Conclusion conclusion;
  /// Auxiliary facts the proof relies on (T6); reported, not part of the hypothesis.
  std::vector<Condition> obligations;
  /// False only when the hypothesis holds and the conclusion Fails.
  bool consistent = true;
  /// Set when evaluation threw inside a scan; the message is in notes.
  bool error = false;
  std::vector<std::string> notes;

  TheoremId id() const { return scenario.id; }
};

TheoremReport check_T1(const TheoremCase& c);
TheoremReport check_C1(const TheoremCase& c);
TheoremReport check_T2(const TheoremCase& c);
TheoremReport check_C2(const TheoremCase& c);
TheoremReport check_T3(const TheoremCase& c);
TheoremReport check_T4(const TheoremCase& c);
TheoremReport check_T5(const TheoremCase& c);
TheoremReport check_T6(const TheoremCase& c);
TheoremReport check_T7(const TheoremCase& c);
TheoremReport check_T8(const TheoremCase& c);
TheoremReport check_Ex1(const TheoremCase& c);
TheoremReport check_Ex2(const TheoremCase& c);

/// Dispatches on c.id.
TheoremReport run(const TheoremCase& c);

/// Example-1 and Example-2 cases with the published reference variances.
TheoremCase example1_case();
TheoremCase example2_case();

// ---------------------------------------------------------------------------
// Scans

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

/// Named parameter ranges plus categorical pools. Keys a sampler does not
/// find fall back to its built-in defaults.
struct ParameterBox {
  std::map<std::string, Range> ranges;
  std::vector<std::string> families;
  std::vector<std::string> generators;
  std::vector<std::string> branches;
  /// Probability of drawing a configuration built to meet the hypothesis;
  /// the remainder is drawn unconstrained from the box.
  double structured = 0.8;

  Range range(const std::string& key, Range fallback) const;
};

/// Source of the scalar draws a sampler makes.
class ParameterSource {
 public:
  virtual ~ParameterSource() = default;
  virtual double uniform(double lo, double hi) = 0;
  virtual int integer(int lo, int hi) = 0;  ///< inclusive
  bool bernoulli(double p) { return uniform(0.0, 1.0) < p; }
  double uniform(Range r) { return uniform(r.lo, r.hi); }
};

class RandomSource final : public ParameterSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) override;
  int integer(int lo, int hi) override;

 private:
  std::mt19937_64 rng_;
};

/// Mixed-radix enumeration: each draw consumes the next base-`levels` digit
/// of the case index and maps it to a cell midpoint.
class LatticeSource final : public ParameterSource {
 public:
  LatticeSource(std::uint64_t index, int levels) : rest_(index), levels_(levels) {}
  double uniform(double lo, double hi) override;
  int integer(int lo, int hi) override;

 private:
  int digit(int radix);
  std::uint64_t rest_;
  int levels_;
};

enum class Strategy { Random, Lattice };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct ScanConfig {
  TheoremId id = TheoremId::T1;
  ParameterBox box;
  Strategy strategy = Strategy::Random;
  std::uint64_t seed = 1;
  int budget = 100;
  int levels = 4;
  /// 0 picks std::thread::hardware_concurrency().
  int threads = 0;
};

struct ScanSummary {
  int total = 0;
  int satisfied = 0;
  int satisfied_and_holds = 0;
  int vacuous = 0;
  int inconsistent = 0;
  int inconclusive = 0;
  int errors = 0;
  int obligation_failures = 0;

  double non_vacuous_fraction() const { return total == 0 ? 0.0 : static_cast<double>(satisfied) / total; }
};

struct ScanResult {
  ScanConfig config;
  std::vector<TheoremReport> reports;
  ScanSummary summary;
};

/// One configuration drawn for theorem `id`.
TheoremCase sample_case(TheoremId id, const ParameterBox& box, ParameterSource& src);

/// Draws `budget` cases sequentially, evaluates them concurrently, and returns
/// reports in draw order. An exception inside a case becomes an Inconclusive
/// report with the message in its notes.
ScanResult scan(const ScanConfig& config);

ScanSummary summarize(const std::vector<TheoremReport>& reports);

}  // namespace ordrel
