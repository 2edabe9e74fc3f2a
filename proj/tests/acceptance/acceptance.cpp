// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ordrel/copulas.hpp"
#include "ordrel/errors.hpp"
#include "ordrel/harness.hpp"
#include "ordrel/io.hpp"
#include "ordrel/majorization.hpp"
#include "ordrel/orders.hpp"
#include "ordrel/systems.hpp"

using namespace ordrel;

namespace {

const std::string kData = ORDREL_DATA_DIR;

struct Outcome_ {
  bool pass = true;
  std::string detail;
};

double rel_err(double v, double ref) { return std::abs(v - ref) / std::abs(ref); }

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Runs one criterion, timing it and turning exceptions into failures.
struct Runner {
  int failures = 0;

  void operator()(int id, const std::string& name, double budget_s, const std::function<Outcome_()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome_ o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", budget_s) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), s);
    std::fflush(stdout);
  }
};

// 1 ---------------------------------------------------------------------------
Outcome_ example1() {
  Outcome_ o;
  std::ostringstream d;
  const struct {
    Eigen::VectorXd k;
    double printed;
  } rows[] = {{vec({1.7, 2.0, 0.9}), 0.043782}, {vec({1.0, 3.0, 2.3}), 0.017826}};
  for (const auto& r : rows) {
    const double closed = weibull_min_variance(r.k, 0.7);
    const double numeric = numeric_variance(OrderStatDist(SystemSpec::series(DistSpec::weibull(0.7, 1.0), r.k)));
    const double e1 = rel_err(closed, r.printed), e2 = rel_err(numeric, closed);
    o.pass = o.pass && e1 <= 1e-4 && e2 <= 1e-3;
    d << "var=" << format_number(closed) << " (printed " << r.printed << ", rel " << fmt("%.1e", e1)
      << ", quadrature rel " << fmt("%.1e", e2) << ") ";
  }
  const TheoremReport rep = run(example1_case());
  o.pass = o.pass && rep.consistent && rep.conclusion.outcome == Outcome::Holds;
  d << "disp " << to_string(rep.conclusion.outcome);
  o.detail = d.str();
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome_ example2() {
  Outcome_ o;
  std::ostringstream d;
  const struct {
    Eigen::VectorXd a;
    double printed;
    double exact;
  } rows[] = {{vec({1.0, 4.0, 7.0}), 0.009917, 12.0 / 1210.0}, {vec({1.2, 3.5, 7.2}), 0.010117, 11.9 / 1176.219}};
  for (const auto& r : rows) {
    const double v = lomax_min_moments(r.a).variance;
    const double e1 = rel_err(v, r.printed), e2 = rel_err(v, r.exact);
    o.pass = o.pass && e1 <= 1e-4 && e2 <= 1e-12;
    d << "var=" << format_number(v) << " (printed " << r.printed << ", rel " << fmt("%.1e", e1) << ", exact rel "
      << fmt("%.1e", e2) << ") ";
  }
  const TheoremReport rep = run(example2_case());
  o.pass = o.pass && rep.consistent && rep.conclusion.outcome == Outcome::Holds;
  d << "disp " << to_string(rep.conclusion.outcome);
  o.detail = d.str();
  return o;
}

// 3 ---------------------------------------------------------------------------
Outcome_ suites() {
  Outcome_ o;
  std::ostringstream d;
  for (const char* name : {"t1", "c1", "t2", "c2", "t3", "t4", "t5", "t6", "t7", "t8"}) {
    const ScanConfig c = scan_config_from_json(load_json(kData + "/suites/" + name + ".json"));
    const ScanSummary s = scan(c).summary;
    const bool ok = s.satisfied >= 100 && s.inconsistent == 0 && s.errors == 0;
    o.pass = o.pass && ok;
    d << to_string(c.id) << " " << s.satisfied << "/" << s.total << " sat, " << s.inconsistent << " inc";
    if (s.errors) d << ", " << s.errors << " err";
    d << (ok ? "; " : " <- ; ");
  }
  o.detail = d.str();
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome_ exponential_oracle() {
  std::vector<double> rates;
  for (int i = 0; i < 20; ++i) rates.push_back(0.1 * std::pow(100.0, i / 19.0));
  int agree = 0, total = 0;
  std::string first;
  for (double la : rates) {
    for (double lb : rates) {
      const DistSpec a = DistSpec::exponential(la), b = DistSpec::exponential(lb);
      const Outcome expected = la >= lb ? Outcome::Holds : Outcome::Fails;
      for (Relation r : {Relation::St, Relation::Hr, Relation::Lr, Relation::Disp}) {
        ++total;
        const Outcome got = check(r, a, b).outcome;
        if (got == expected) {
          ++agree;
        } else if (first.empty()) {
          first = "; first mismatch " + to_string(r) + " rates " + format_number(la) + " vs " + format_number(lb) +
                  ": " + to_string(got);
        }
      }
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree" + first};
}

// 5 ---------------------------------------------------------------------------
Outcome_ pareto_star_oracle() {
  // Minima of Pareto-I components are Pareto-I with shape the sum of the
  // proportions; the proportions are spread unevenly over three components.
  const Eigen::VectorXd weights = vec({0.2, 0.3, 0.5});
  int agree = 0, total = 0;
  std::string first;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double sa = 0.5 + 0.5 * i, sb = 0.5 + 0.5 * j;
      const OrderStatDist x(SystemSpec::series(DistSpec::pareto1(1.0), weights * sa));
      const OrderStatDist y(SystemSpec::series(DistSpec::pareto1(1.0), weights.reverse() * sb));
      const Outcome expected = sb - sa <= 0.0 ? Outcome::Holds : Outcome::Fails;
      const Outcome got = check(Relation::Star, x, y).outcome;
      ++total;
      if (got == expected) {
        ++agree;
      } else if (first.empty()) {
        first = "; first mismatch sums " + format_number(sa) + ", " + format_number(sb) + ": " + to_string(got);
      }
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree" + first};
}

// 6 ---------------------------------------------------------------------------
using Model = std::variant<DistSpec, OrderStatDist>;

Model model_from(const Json& j) {
  if (j.contains("kind")) return OrderStatDist(system_from_json(j));
  return dist_from_json(j);
}

Outcome_ implication_chain() {
  std::vector<std::pair<std::string, std::pair<Model, Model>>> pairs;
  for (const Json& p : load_json(kData + "/corpus/pairs.json")) {
    pairs.push_back({p["name"].get<std::string>(), {model_from(p["a"]), model_from(p["b"])}});
  }
  std::vector<std::pair<std::string, Model>> singles;
  for (const char* f : {"exp1", "exp2", "weibull_0.7", "lomax_2", "pareto_1.5", "reflected_lomax", "series_weibull"}) {
    singles.push_back({f, model_from(load_json(kData + "/corpus/dist/" + f + ".json"))});
  }
  for (std::size_t i = 0; i < singles.size(); ++i) {
    for (std::size_t j = i + 1; j < singles.size(); ++j) {
      pairs.push_back({singles[i].first + "/" + singles[j].first, {singles[i].second, singles[j].second}});
    }
  }
  for (const char* f : {"t1_lomax", "t2_reflected", "t3_mixed", "t4_mixed", "t5_pareto"}) {
    const TheoremCase c = case_from_json(load_json(kData + "/cases/" + f + ".json"));
    const auto& s = std::get<SystemPair>(c.scenario);
    pairs.push_back({f, {OrderStatDist(s.x), OrderStatDist(s.y)}});
  }

  int checked = 0, skipped = 0, violations = 0, lr_holds = 0;
  std::string first;
  for (const auto& [name, ab] : pairs) {
    for (int dir = 0; dir < 2; ++dir) {
      const Model& a = dir == 0 ? ab.first : ab.second;
      const Model& b = dir == 0 ? ab.second : ab.first;
      try {
        const auto run_rel = [&](Relation r) {
          return std::visit([&](const auto& x, const auto& y) { return check(r, x, y).outcome; }, a, b);
        };
        const Outcome lr = run_rel(Relation::Lr), hr = run_rel(Relation::Hr), st = run_rel(Relation::St);
        ++checked;
        lr_holds += lr == Outcome::Holds;
        const bool bad = (lr == Outcome::Holds && hr == Outcome::Fails) ||
                         (hr == Outcome::Holds && st == Outcome::Fails) ||
                         (lr == Outcome::Holds && st == Outcome::Fails);
        if (bad) {
          ++violations;
          if (first.empty()) first = "; first violation " + name + (dir ? " (reversed)" : "");
        }
      } catch (const DomainError&) {
        // Disjoint supports: no order check applies.
        ++skipped;
      }
    }
  }
  return {violations == 0 && checked > 0,
          std::to_string(checked) + " ordered pairs, " + std::to_string(lr_holds) + " with lr, " +
              std::to_string(violations) + " violations, " + std::to_string(skipped) + " skipped (disjoint supports)" +
              first};
}

// 7 ---------------------------------------------------------------------------
Outcome_ copula_invariants() {
  std::vector<ShiftedSystem> systems;
  for (const Json& j : load_json(kData + "/corpus/shifted.json")) systems.push_back(shifted_from_json(j));
  for (const char* f : {"t7_clayton", "t8_frank", "t7_concave_counterexample", "t8_convex_counterexample"}) {
    const TheoremCase c = case_from_json(load_json(kData + "/cases/" + f + ".json"));
    const auto& p = std::get<ShiftedPair>(c.scenario);
    systems.push_back(p.y);
    systems.push_back(p.z);
  }

  std::vector<GeneratorSpec> gens{GeneratorSpec::independence(2), GeneratorSpec::clayton(0.3, 2),
                                  GeneratorSpec::clayton(5.0, 2), GeneratorSpec::frank(2.0, 3),
                                  GeneratorSpec::frank(-4.0, 2)};
  for (const auto& s : systems) gens.push_back(s.generator);

  double worst_round = 0.0;
  for (const auto& g : gens) {
    for (int i = 0; i <= 200; ++i) {
      const double x = 1e-4 * std::pow(1e6, i / 200.0);
      const double u = (i + 0.5) / 201.0;
      worst_round = std::max(worst_round, std::abs(phi(g, psi(g, x)) - x) / std::max(1.0, x));
      worst_round = std::max(worst_round, std::abs(psi(g, phi(g, u)) - u));
    }
  }

  // Largest |C_theta - independence| over a uniform grid of the unit square,
  // for the required theta and a ten times smaller one to show the linear rate.
  const auto indep_gap = [](double theta) {
    const auto clayton = GeneratorSpec::clayton(theta, 2);
    const auto indep = GeneratorSpec::independence(2);
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      for (int j = 1; j < 100; ++j) {
        const Eigen::VectorXd u = vec({i / 100.0, j / 100.0});
        worst = std::max(worst, std::abs(copula_value(clayton, u) - copula_value(indep, u)));
      }
    }
    return worst;
  };
  const double worst_indep = indep_gap(1e-3);
  const double worst_indep_small = indep_gap(1e-4);

  // J1, J2 are survival functions of the min and max of X_k - mu_k, so both
  // decrease in x and in every mu_i.
  int mono_checks = 0, mono_violations = 0;
  const auto tol = [](double a, double b) { return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
  for (const auto& s : systems) {
    const double lo = quantile(s.baseline, 1e-3) - s.shifts.maxCoeff();
    const double hi = quantile(s.baseline, 1.0 - 1e-3) - s.shifts.minCoeff();
    double p1 = kInf, p2 = kInf;
    for (int i = 0; i <= 200; ++i) {
      const double x = lo + (hi - lo) * i / 200.0;
      const double j1 = J1(s, x), j2 = J2(s, x);
      mono_checks += 2;
      mono_violations += (j1 > p1 + tol(j1, p1)) + (j2 > p2 + tol(j2, p2));
      p1 = j1;
      p2 = j2;
      for (Eigen::Index k = 0; k < s.shifts.size(); ++k) {
        ShiftedSystem bumped = s;
        bumped.shifts[k] += 0.1;
        const double b1 = J1(bumped, x), b2 = J2(bumped, x);
        mono_checks += 2;
        mono_violations += (b1 > j1 + tol(b1, j1)) + (b2 > j2 + tol(b2, j2));
      }
    }
  }

  const bool ok = worst_round <= 1e-10 && worst_indep <= 1e-4 && mono_violations == 0;
  return {ok, "round-trip max err " + fmt("%.1e", worst_round) + " over " + std::to_string(gens.size()) +
                  " generators; Clayton vs independence max gap " + fmt("%.3e", worst_indep) + " at theta 1e-3 (" +
                  fmt("%.3e", worst_indep_small) + " at 1e-4); " +
                  std::to_string(mono_violations) + "/" + std::to_string(mono_checks) +
                  " J1/J2 monotonicity violations over " + std::to_string(systems.size()) + " systems"};
}

// 8 ---------------------------------------------------------------------------
Outcome_ schur_obligations() {
  int points = 0, violations = 0;
  for (int i = 0; i <= 100; ++i) {
    const double alpha = 0.05 * std::pow(400.0, i / 100.0);  // [0.05, 20]
    for (int j = 0; j <= 100; ++j) {
      const double u = 1.0 + 1e-4 * std::pow(1e8, j / 100.0);  // 1 + [1e-4, 1e4]
      ++points;
      violations += !(lomax_g_second(alpha, u) > 0.0) || !(lomax_g_prime(alpha, u) < 0.0);
    }
  }
  int certs = 0, cert_failures = 0;
  for (double u : {1.01, 1.5, 3.0, 20.0, 1000.0}) {
    const auto f = [u](const ParamVector& a) {
      double s = 0.0;
      for (double x : a) s += lomax_g(x, u);
      return s;
    };
    for (int n : {2, 3, 5}) {
      const Box box = Box::cube(n, 0.1, 10.0);
      certs += 2;
      cert_failures += schur_certify(f, box, SchurMode::Convex).verdict != CertVerdict::Certified;
      cert_failures += monotone_certify(f, box, Monotonicity::Decreasing).verdict != CertVerdict::Certified;
    }
  }
  return {violations == 0 && cert_failures == 0,
          std::to_string(violations) + "/" + std::to_string(points) + " (alpha, u) points violate g''>0, g'<0; " +
              std::to_string(cert_failures) + "/" + std::to_string(certs) +
              " Schur-convex / decreasing certificates not certified"};
}

}  // namespace

int main() {
  Runner run_criterion;
  run_criterion(1, "Example 1 Weibull minima variances", 1.0, example1);
  run_criterion(2, "Example 2 Lomax minima variances", 1.0, example2);
  run_criterion(3, "theorem suites, zero inconsistencies", 120.0, suites);
  run_criterion(4, "exponential order oracle", 60.0, exponential_oracle);
  run_criterion(5, "Pareto-I star order oracle", 60.0, pareto_star_oracle);
  run_criterion(6, "lr => hr => st over the corpus", 60.0, implication_chain);
  run_criterion(7, "copula invariants", 60.0, copula_invariants);
  run_criterion(8, "Schur obligations for Lomax maxima", 60.0, schur_obligations);
  std::printf("%d of 8 criteria failed\n", run_criterion.failures);
  return run_criterion.failures == 0 ? 0 : 1;
}
