#include "ordrel/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "ordrel/errors.hpp"
#include "ordrel/io.hpp"

namespace ordrel {

namespace {

using Model = std::variant<DistSpec, OrderStatDist>;

Model load_model(const std::string& path) {
  const Json j = load_json(path);
  if (j.is_object() && j.contains("kind")) return OrderStatDist(system_from_json(j));
  return dist_from_json(j);
}

std::optional<GridSpec> env_grid() {
  const char* path = std::getenv("ORDREL_DEFAULT_GRID");
  if (!path || !*path) return std::nullopt;
  return grid_from_json(load_json(path));
}

// Writes to --out when given, otherwise to the result stream.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw SchemaError(path + ": cannot open for writing");
  f << text;
}

const std::map<std::string, std::function<double(const Model&, double)>>& dist_functions() {
  static const std::map<std::string, std::function<double(const Model&, double)>> fns{
      {"cdf", [](const Model& m, double x) { return std::visit([x](const auto& d) { return cdf(d, x); }, m); }},
      {"sf", [](const Model& m, double x) { return std::visit([x](const auto& d) { return sf(d, x); }, m); }},
      {"log_cdf", [](const Model& m, double x) { return std::visit([x](const auto& d) { return log_cdf(d, x); }, m); }},
      {"log_sf", [](const Model& m, double x) { return std::visit([x](const auto& d) { return log_sf(d, x); }, m); }},
      {"pdf", [](const Model& m, double x) { return std::visit([x](const auto& d) { return pdf(d, x); }, m); }},
      {"quantile", [](const Model& m, double u) { return std::visit([u](const auto& d) { return quantile(d, u); }, m); }},
      {"hazard", [](const Model& m, double x) { return std::visit([x](const auto& d) { return hazard(d, x); }, m); }},
      {"rev_hazard", [](const Model& m, double x) { return std::visit([x](const auto& d) { return rev_hazard(d, x); }, m); }},
  };
  return fns;
}

struct DistArgs {
  std::string spec;
  std::vector<std::string> fns;
  std::vector<double> xs;
  std::string grid;
  std::string out;
  std::string format = "csv";
};

int cmd_dist(const DistArgs& a, std::ostream& out) {
  const Model m = load_model(a.spec);
  for (const auto& f : a.fns) {
    if (!dist_functions().count(f)) throw SchemaError("--fn: unknown function '" + f + "'");
  }
  std::vector<double> points = a.xs;
  std::string axis = "x";
  if (points.empty()) {
    std::optional<GridSpec> g;
    if (!a.grid.empty()) {
      g = grid_from_json(load_json(a.grid));
    } else {
      g = env_grid();
    }
    if (!g) throw SchemaError("dist eval: give --x values or a --grid (or set ORDREL_DEFAULT_GRID)");
    if (g->kind == GridSpec::Kind::U) axis = "u";
    for (double p : g->points()) points.push_back(p);
  }

  std::vector<std::vector<double>> cols;
  for (const auto& f : a.fns) {
    std::vector<double> col;
    for (double x : points) col.push_back(dist_functions().at(f)(m, x));
    cols.push_back(std::move(col));
  }

  std::ostringstream s;
  if (a.format == "json") {
    Json j;
    Json xs = Json::array();
    for (double x : points) xs.push_back(std::strtod(format_number(x).c_str(), nullptr));
    j[axis] = xs;
    for (std::size_t k = 0; k < a.fns.size(); ++k) {
      Json c = Json::array();
      for (double v : cols[k]) {
        if (std::isfinite(v)) {
          c.push_back(std::strtod(format_number(v).c_str(), nullptr));
        } else {
          c.push_back(format_number(v));
        }
      }
      j[a.fns[k]] = c;
    }
    s << j.dump(2) << '\n';
  } else {
    s << axis;
    for (const auto& f : a.fns) s << ',' << f;
    s << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
      s << format_number(points[i]);
      for (const auto& c : cols) s << ',' << format_number(c[i]);
      s << '\n';
    }
  }
  emit(s.str(), a.out, out);
  return kExitOk;
}

struct OrderArgs {
  std::vector<std::string> specs;
  std::string relation;
  std::string grid;
  std::string out;
};

int cmd_order(const OrderArgs& a, std::ostream& out) {
  if (a.specs.size() != 2) throw SchemaError("order: pass exactly two --spec files (A then B)");
  const Relation rel = relation_from_string(a.relation);
  const Model ma = load_model(a.specs[0]);
  const Model mb = load_model(a.specs[1]);
  std::optional<GridSpec> g;
  if (!a.grid.empty()) {
    g = grid_from_json(load_json(a.grid));
  } else if (auto e = env_grid()) {
    // The environment default only applies where its kind fits the relation.
    const bool wants_u = rel == Relation::Disp || rel == Relation::Star;
    if ((e->kind == GridSpec::Kind::U) == wants_u) g = e;
  }
  const OrderVerdict v = std::visit(
      [&](const auto& x, const auto& y) { return g ? check(rel, x, y, *g) : check(rel, x, y); }, ma, mb);
  emit(to_json(v).dump(2) + "\n", a.out, out);
  switch (v.outcome) {
    case Outcome::Holds: return kExitOk;
    case Outcome::Fails: return kExitFails;
    case Outcome::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

struct RunArgs {
  std::string spec;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
};

int cmd_theorem(const RunArgs& a, std::ostream& out) {
  const TheoremCase c = case_from_json(load_json(a.spec));
  const TheoremReport r = run(c);
  std::ostringstream s;
  if (a.format == "csv") {
    write_reports_csv(s, {r});
  } else {
    Json arr = Json::array();
    arr.push_back(to_json(r));
    s << arr.dump(2) << '\n';
  }
  emit(s.str(), a.out, out);
  return r.consistent ? kExitOk : kExitFails;
}

int cmd_scan(const RunArgs& a, std::ostream& out) {
  ScanConfig c = scan_config_from_json(load_json(a.spec));
  if (a.seed) c.seed = *a.seed;
  const ScanResult r = scan(c);
  std::ostringstream s;
  if (a.format == "csv") {
    write_reports_csv(s, r.reports);
  } else {
    s << to_json(r).dump(2) << '\n';
  }
  emit(s.str(), a.out, out);
  if (!a.out.empty()) out << to_json(r.summary).dump() << '\n';
  return r.summary.inconsistent == 0 ? kExitOk : kExitFails;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic orders for heterogeneous series and parallel systems", "ordrel"};
  app.require_subcommand(1);

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Evaluate a distribution or system");
  auto* eval = dist_cmd->add_subcommand("eval", "Evaluate functions at points or over a grid");
  dist_cmd->require_subcommand(1);
  eval->add_option("-s,--spec", dist.spec, "DistSpec or SystemSpec JSON file")->required();
  eval->add_option("--fn", dist.fns, "cdf, sf, log_cdf, log_sf, pdf, quantile, hazard, rev_hazard")->required();
  eval->add_option("--x", dist.xs, "Evaluation point (repeatable)");
  eval->add_option("--grid", dist.grid, "GridSpec JSON file");
  eval->add_option("--out", dist.out, "Output file");
  eval->add_option("--format", dist.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  OrderArgs order;
  auto* order_cmd = app.add_subcommand("order", "Check A <= B in a stochastic order");
  order_cmd->add_option("-s,--spec", order.specs, "Spec files for A and B")->required();
  order_cmd->add_option("--relation", order.relation, "st, hr, rh, lr, disp, star")->required();
  order_cmd->add_option("--grid", order.grid, "GridSpec JSON file");
  order_cmd->add_option("--out", order.out, "Output file");

  RunArgs theorem;
  auto* theorem_cmd = app.add_subcommand("theorem", "Evaluate one theorem case");
  theorem_cmd->add_option("-s,--spec", theorem.spec, "TheoremCase JSON file")->required();
  theorem_cmd->add_option("--out", theorem.out, "Report file");
  theorem_cmd->add_option("--format", theorem.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  RunArgs scan_args;
  std::uint64_t seed = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Run a parameter scan");
  scan_cmd->add_option("-s,--spec", scan_args.spec, "ScanConfig JSON file")->required();
  scan_cmd->add_option("--out", scan_args.out, "Report file");
  scan_cmd->add_option("--format", scan_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = scan_cmd->add_option("--seed", seed, "Override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_dist(dist, out);
    if (order_cmd->parsed()) return cmd_order(order, out);
    if (theorem_cmd->parsed()) return cmd_theorem(theorem, out);
    if (scan_cmd->parsed()) {
      if (seed_opt->count() > 0) scan_args.seed = seed;
      return cmd_scan(scan_args, out);
    }
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ordrel
