#include <catch_amalgamated.hpp>

#include <set>
#include <string>

#include "ordrel/errors.hpp"
#include "ordrel/harness.hpp"
#include "ordrel/io.hpp"

using namespace ordrel;

namespace {
const std::string kData = ORDREL_DATA_DIR;

TheoremReport run_file(const std::string& rel) { return run(case_from_json(load_json(kData + "/" + rel))); }
}  // namespace

TEST_CASE("the two worked examples reproduce their variances") {
  for (const TheoremCase& c : {example1_case(), example2_case()}) {
    const TheoremReport r = run(c);
    INFO(to_string(c.id));
    CHECK(r.hypothesis_satisfied);
    CHECK(r.consistent);
    CHECK(r.conclusion.outcome == Outcome::Holds);
    REQUIRE(r.conclusion.values.size() >= 2);
    for (const ValueCheck& v : r.conclusion.values) {
      INFO(v.name << " " << v.value << " vs " << v.reference);
      CHECK(v.ok);
    }
  }
}

TEST_CASE("shipped cases hold") {
  for (const char* f : {"cases/example1.json", "cases/example2.json", "cases/t1_lomax.json", "cases/c1_outliers.json",
                        "cases/t2_reflected.json", "cases/c2_outliers.json", "cases/t3_mixed.json",
                        "cases/t4_mixed.json", "cases/t5_pareto.json", "cases/t6_222_vs_123.json",
                        "cases/t7_clayton.json", "cases/t8_frank.json"}) {
    const TheoremReport r = run_file(f);
    INFO(f);
    CHECK(r.hypothesis_satisfied);
    CHECK(r.conclusion.outcome == Outcome::Holds);
    CHECK(r.consistent);
    CHECK_FALSE(r.error);
  }
}

TEST_CASE("T6 reports its proof obligations") {
  const TheoremReport r = run_file("cases/t6_222_vs_123.json");
  REQUIRE_FALSE(r.obligations.empty());
  for (const Condition& o : r.obligations) {
    INFO(o.name << ": " << o.detail);
    CHECK(o.satisfied);
  }
}

TEST_CASE("the counterexample cases are flagged inconsistent") {
  for (const char* f : {"cases/t7_concave_counterexample.json", "cases/t8_convex_counterexample.json"}) {
    const TheoremReport r = run_file(f);
    INFO(f);
    CHECK(r.hypothesis_satisfied);
    CHECK(r.conclusion.outcome == Outcome::Fails);
    CHECK_FALSE(r.consistent);
    REQUIRE(r.conclusion.verdict);
    CHECK(r.conclusion.verdict->witness);
  }
}

TEST_CASE("scenario type must match the theorem") {
  TheoremCase c = example1_case();
  c.id = TheoremId::T1;
  CHECK_THROWS_AS(run(c), DomainError);
}

TEST_CASE("an empty budget gives an empty scan") {
  ScanConfig c;
  c.id = TheoremId::T3;
  c.budget = 0;
  const ScanResult r = scan(c);
  CHECK(r.reports.empty());
  CHECK(r.summary.total == 0);
  CHECK(r.summary.non_vacuous_fraction() == 0.0);
}

TEST_CASE("scans are deterministic and independent of the thread count") {
  for (TheoremId id : {TheoremId::T1, TheoremId::C2, TheoremId::T5, TheoremId::T7}) {
    ScanConfig c;
    c.id = id;
    c.seed = 77;
    c.budget = 24;
    c.threads = 1;
    const std::string one = to_json(scan(c)).dump();
    c.threads = 4;
    const std::string four = to_json(scan(c)).dump();
    const std::string again = to_json(scan(c)).dump();
    INFO(to_string(id));
    CHECK(one == four);
    CHECK(four == again);
    c.seed = 78;
    CHECK(to_json(scan(c)).dump() != one);
  }
}

TEST_CASE("structured draws mostly satisfy the hypothesis") {
  for (TheoremId id : {TheoremId::T1, TheoremId::C1, TheoremId::T2, TheoremId::C2, TheoremId::T3, TheoremId::T4,
                       TheoremId::T5, TheoremId::T6}) {
    ScanConfig c;
    c.id = id;
    c.seed = 5;
    c.budget = 40;
    const ScanSummary s = scan(c).summary;
    INFO(to_string(id));
    CHECK(s.satisfied >= 20);
    CHECK(s.inconsistent == 0);
    CHECK(s.errors == 0);
  }
}

TEST_CASE("lattice scans enumerate distinct cases") {
  ScanConfig c = scan_config_from_json(load_json(kData + "/suites/t1_grid.json"));
  c.budget = 27;
  const ScanResult r = scan(c);
  REQUIRE(r.reports.size() == 27);
  std::set<std::string> seen;
  for (const auto& rep : r.reports) seen.insert(to_json(rep.scenario).dump());
  CHECK(seen.size() > 13);
  CHECK(r.summary.inconsistent == 0);
}

TEST_CASE("lattice digits cover cell midpoints") {
  LatticeSource s(5, 3);  // digits 2, 1, 0, 0, ...
  CHECK(s.uniform(0.0, 3.0) == Catch::Approx(2.5));
  CHECK(s.uniform(0.0, 3.0) == Catch::Approx(1.5));
  CHECK(s.integer(4, 6) == 4);
}

TEST_CASE("names round-trip") {
  for (TheoremId id : {TheoremId::T1, TheoremId::C1, TheoremId::T2, TheoremId::C2, TheoremId::T3, TheoremId::T4,
                       TheoremId::T5, TheoremId::T6, TheoremId::T7, TheoremId::T8, TheoremId::Ex1, TheoremId::Ex2}) {
    CHECK(theorem_from_string(to_string(id)) == id);
  }
  CHECK(branch_from_string(to_string(Branch::LogConcave)) == Branch::LogConcave);
  CHECK(strategy_from_string("grid") == Strategy::Lattice);
  CHECK(strategy_from_string("random") == Strategy::Random);
}

TEST_CASE("shipped suites are non-vacuous and inconsistent only on the known-false branches") {
  for (const char* f : {"t1", "c1", "t2", "c2", "t3", "t4", "t5", "t6", "t7", "t8", "t1_grid"}) {
    const ScanResult r = scan(scan_config_from_json(load_json(kData + "/suites/" + f + ".json")));
    INFO(f);
    CHECK(r.summary.non_vacuous_fraction() >= 0.5);
    CHECK(r.summary.errors == 0);
    for (const TheoremReport& rep : r.reports) {
      if (rep.consistent) continue;
      // The log-concave T7 branch and the log-convex T8 branch have
      // counterexamples where the shifts move the arguments past the support.
      const Branch b = std::get<ShiftedPair>(rep.scenario.scenario).branch;
      const bool known = (rep.id() == TheoremId::T7 && b == Branch::LogConcave) ||
                         (rep.id() == TheoremId::T8 && b == Branch::LogConvex);
      INFO(to_json(rep).dump());
      CHECK(known);
    }
  }
}
