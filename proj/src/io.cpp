#include "ordrel/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "ordrel/errors.hpp"

namespace ordrel {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::strtod(format_number(v).c_str(), nullptr);
}

Json num_array(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

// Object reader that remembers which keys were consumed so leftovers can be
// reported as unknown fields.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(path_ + ": " + msg); }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& at(const std::string& key) {
    if (!j_.contains(key)) fail("missing field '" + key + "'");
    used_.insert(key);
    return j_.at(key);
  }

  std::string sub(const std::string& key) const { return path_ + "." + key; }

  // A string field mapped through one of the *_from_string parsers.
  template <class F>
  auto name(const std::string& key, F parse) {
    const std::string v = string(key);
    try {
      return parse(v);
    } catch (const DomainError& e) {
      throw SchemaError(sub(key) + ": " + e.what());
    }
  }

  double number(const std::string& key) { return as_number(at(key), sub(key)); }

  std::optional<double> opt_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::string string(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_string()) throw SchemaError(sub(key) + ": expected a string");
    return v.get<std::string>();
  }

  long long integer(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_number_integer()) throw SchemaError(sub(key) + ": expected an integer");
    return v.get<long long>();
  }

  bool boolean(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_boolean()) throw SchemaError(sub(key) + ": expected a boolean");
    return v.get<bool>();
  }

  Eigen::VectorXd vector(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_array() || v.empty()) throw SchemaError(sub(key) + ": expected a non-empty array of numbers");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[static_cast<Eigen::Index>(i)] = as_number(v[i], sub(key) + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_array()) throw SchemaError(sub(key) + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) throw SchemaError(sub(key) + ": expected an array of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  void done() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) fail("unknown field '" + k + "'");
    }
  }

  static double as_number(const Json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf") return kInf;
      if (s == "-inf") return -kInf;
    }
    throw SchemaError(path + ": expected a number");
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

DistSpec dist_at(const Json& j, const std::string& path) {
  Reader r(j, path);
  const std::string fam = r.string("family");
  Reader p(r.at("params"), r.sub("params"));
  DistSpec out = [&] {
    if (fam == "exponential") return DistSpec::exponential(p.number("rate"));
    if (fam == "weibull") {
      const double shape = p.number("shape");
      return DistSpec::weibull(shape, p.number("rate"));
    }
    if (fam == "lomax") {
      const double shape = p.number("shape");
      return DistSpec::lomax(shape, p.number("scale"));
    }
    if (fam == "pareto1") return DistSpec::pareto1(p.number("shape"));
    if (fam == "reflected") return DistSpec::reflected(dist_at(p.at("inner"), p.sub("inner")));
    r.fail("unknown family '" + fam + "'");
  }();
  p.done();
  r.done();
  return out;
}

SystemSpec system_at(const Json& j, const std::string& path) {
  Reader r(j, path);
  const std::string kind = r.string("kind");
  SystemKind k;
  if (kind == "series") {
    k = SystemKind::SeriesPHR;
  } else if (kind == "parallel") {
    k = SystemKind::ParallelPRHR;
  } else {
    r.fail("kind must be 'series' or 'parallel'");
  }
  const Json& comps = r.at("components");
  if (!comps.is_array() || comps.empty()) r.fail("components must be a non-empty array");
  std::vector<Component> cs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    Reader c(comps[i], r.sub("components[" + std::to_string(i) + "]"));
    const DistSpec d = dist_at(c.at("baseline"), c.sub("baseline"));
    cs.push_back({d, c.number("prop")});
    c.done();
  }
  std::optional<std::size_t> split;
  if (r.has("split")) {
    const long long s = r.integer("split");
    if (s < 0) r.fail("split must be non-negative");
    split = static_cast<std::size_t>(s);
  }
  r.done();
  return SystemSpec(k, std::move(cs), split);
}

GeneratorSpec generator_at(const Json& j, const std::string& path) {
  Reader r(j, path);
  const std::string fam = r.string("family");
  const int dim = static_cast<int>(r.integer("dim"));
  GeneratorSpec g = [&] {
    if (fam == "independence") return GeneratorSpec::independence(dim);
    if (fam == "clayton") return GeneratorSpec::clayton(r.number("theta"), dim);
    if (fam == "frank") return GeneratorSpec::frank(r.number("theta"), dim);
    r.fail("unknown generator family '" + fam + "'");
  }();
  r.done();
  return g;
}

GridSpec grid_at(const Json& j, const std::string& path) {
  Reader r(j, path);
  const std::string kind = r.string("kind");
  GridSpec g;
  if (kind == "x") {
    g = GridSpec::x_grid(r.number("lo"), r.number("hi"));
  } else if (kind == "u") {
    g = GridSpec::u_grid(r.opt_number("eps").value_or(1e-3));
  } else {
    r.fail("kind must be 'x' or 'u'");
  }
  if (r.has("n")) g.n = static_cast<int>(r.integer("n"));
  if (auto t = r.opt_number("tau_mono")) g.tau_mono = *t;
  if (auto t = r.opt_number("tau_pt")) g.tau_pt = *t;
  r.done();
  g.validate();
  return g;
}

ShiftedSystem shifted_at(const Json& j, const std::string& path) {
  Reader r(j, path);
  ShiftedSystem s{dist_at(r.at("baseline"), r.sub("baseline")), r.vector("shifts"),
                  generator_at(r.at("generator"), r.sub("generator"))};
  r.done();
  s.validate();
  return s;
}

OutlierBlocks blocks_at(const Json& j, const std::string& path) {
  Reader r(j, path);
  OutlierBlocks b;
  b.p = static_cast<int>(r.integer("p"));
  b.a1 = r.number("a1");
  b.q = static_cast<int>(r.integer("q"));
  b.a2 = r.number("a2");
  r.done();
  return b;
}

Scenario scenario_at(TheoremId id, const Json& j, const std::string& path) {
  Reader r(j, path);
  Scenario s = [&]() -> Scenario {
    switch (id) {
      case TheoremId::T1:
      case TheoremId::T2:
      case TheoremId::T3:
      case TheoremId::T4:
      case TheoremId::T5: {
        SystemSpec x = system_at(r.at("x"), r.sub("x"));
        return SystemPair{x, system_at(r.at("y"), r.sub("y"))};
      }
      case TheoremId::C1:
      case TheoremId::C2: {
        OutlierScenario o{dist_at(r.at("f0"), r.sub("f0")), dist_at(r.at("g0"), r.sub("g0")), {}, {}};
        o.x = blocks_at(r.at("x"), r.sub("x"));
        o.y = blocks_at(r.at("y"), r.sub("y"));
        return o;
      }
      case TheoremId::T6: {
        LomaxPair p;
        p.theta = r.number("theta");
        p.alpha = r.vector("alpha");
        p.alpha_star = r.vector("alpha_star");
        return p;
      }
      case TheoremId::T7:
      case TheoremId::T8: {
        ShiftedSystem y = shifted_at(r.at("y"), r.sub("y"));
        ShiftedSystem z = shifted_at(r.at("z"), r.sub("z"));
        return ShiftedPair{y, z, r.name("branch", branch_from_string)};
      }
      case TheoremId::Ex1: {
        WeibullExample w;
        w.shape = r.number("shape");
        w.k = r.vector("k");
        w.k_star = r.vector("k_star");
        w.expected_x = r.number("expected_x");
        w.expected_y = r.number("expected_y");
        return w;
      }
      case TheoremId::Ex2: {
        LomaxExample l;
        l.alpha = r.vector("alpha");
        l.alpha_star = r.vector("alpha_star");
        l.expected_x = r.number("expected_x");
        l.expected_y = r.number("expected_y");
        return l;
      }
    }
    r.fail("unknown theorem");
  }();
  r.done();
  return s;
}

std::string kind_name(SystemKind k) { return k == SystemKind::SeriesPHR ? "series" : "parallel"; }

std::string family_name(Family f) {
  switch (f) {
    case Family::Exponential: return "exponential";
    case Family::Weibull: return "weibull";
    case Family::Lomax: return "lomax";
    case Family::ParetoI: return "pareto1";
    case Family::ReflectedDFR: return "reflected";
  }
  return "?";
}

std::string generator_name(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::Independence: return "independence";
    case GeneratorFamily::Clayton: return "clayton";
    case GeneratorFamily::Frank: return "frank";
  }
  return "?";
}

Json to_json(const OutlierBlocks& b) {
  Json j;
  j["p"] = b.p;
  j["a1"] = num(b.a1);
  j["q"] = b.q;
  j["a2"] = num(b.a2);
  return j;
}

Json scenario_json(const Scenario& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        Json j;
        if constexpr (std::is_same_v<T, SystemPair>) {
          j["x"] = to_json(v.x);
          j["y"] = to_json(v.y);
        } else if constexpr (std::is_same_v<T, OutlierScenario>) {
          j["f0"] = to_json(v.f0);
          j["g0"] = to_json(v.g0);
          j["x"] = to_json(v.x);
          j["y"] = to_json(v.y);
        } else if constexpr (std::is_same_v<T, LomaxPair>) {
          j["theta"] = num(v.theta);
          j["alpha"] = num_array(v.alpha);
          j["alpha_star"] = num_array(v.alpha_star);
        } else if constexpr (std::is_same_v<T, ShiftedPair>) {
          j["y"] = to_json(v.y);
          j["z"] = to_json(v.z);
          j["branch"] = to_string(v.branch);
        } else if constexpr (std::is_same_v<T, WeibullExample>) {
          j["shape"] = num(v.shape);
          j["k"] = num_array(v.k);
          j["k_star"] = num_array(v.k_star);
          j["expected_x"] = num(v.expected_x);
          j["expected_y"] = num(v.expected_y);
        } else {
          j["alpha"] = num_array(v.alpha);
          j["alpha_star"] = num_array(v.alpha_star);
          j["expected_x"] = num(v.expected_x);
          j["expected_y"] = num(v.expected_y);
        }
        return j;
      },
      s);
}

Json conditions_json(const std::vector<Condition>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"satisfied", c.satisfied}, {"detail", c.detail}});
  return a;
}

Json witness_json(const std::optional<ParamVector>& w) { return w ? num_array(*w) : Json(nullptr); }

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": malformed JSON: " + e.what());
  }
}

DistSpec dist_from_json(const Json& j) { return dist_at(j, "$"); }
SystemSpec system_from_json(const Json& j) { return system_at(j, "$"); }
GeneratorSpec generator_from_json(const Json& j) { return generator_at(j, "$"); }
GridSpec grid_from_json(const Json& j) { return grid_at(j, "$"); }
ShiftedSystem shifted_from_json(const Json& j) { return shifted_at(j, "$"); }

TheoremCase case_from_json(const Json& j) {
  Reader r(j, "$");
  const TheoremId id = r.name("theorem", theorem_from_string);
  TheoremCase c{id, scenario_at(id, r.at("scenario"), r.sub("scenario")), {}, {}, ""};
  if (r.has("xgrid")) c.xgrid = grid_at(r.at("xgrid"), r.sub("xgrid"));
  if (r.has("ugrid")) c.ugrid = grid_at(r.at("ugrid"), r.sub("ugrid"));
  if (r.has("label")) c.label = r.string("label");
  r.done();
  return c;
}

ScanConfig scan_config_from_json(const Json& j) {
  Reader r(j, "$");
  ScanConfig c;
  c.id = r.name("theorem", theorem_from_string);
  if (r.has("strategy")) c.strategy = r.name("strategy", strategy_from_string);
  if (r.has("seed")) {
    const long long s = r.integer("seed");
    if (s < 0) r.fail("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (r.has("budget")) c.budget = static_cast<int>(r.integer("budget"));
  if (r.has("levels")) c.levels = static_cast<int>(r.integer("levels"));
  if (r.has("threads")) c.threads = static_cast<int>(r.integer("threads"));
  if (r.has("box")) {
    Reader b(r.at("box"), r.sub("box"));
    if (b.has("ranges")) {
      const Json& rs = b.at("ranges");
      if (!rs.is_object()) b.fail("ranges must be an object");
      for (const auto& [k, v] : rs.items()) {
        const std::string p = b.sub("ranges." + k);
        if (!v.is_array() || v.size() != 2) throw SchemaError(p + ": expected [lo, hi]");
        const Range range{Reader::as_number(v[0], p + "[0]"), Reader::as_number(v[1], p + "[1]")};
        if (!(range.lo <= range.hi)) throw SchemaError(p + ": lo must not exceed hi");
        c.box.ranges[k] = range;
      }
    }
    if (b.has("families")) c.box.families = b.strings("families");
    if (b.has("generators")) c.box.generators = b.strings("generators");
    if (b.has("branches")) c.box.branches = b.strings("branches");
    if (b.has("structured")) c.box.structured = b.number("structured");
    b.done();
  }
  r.done();
  if (c.budget < 0) throw SchemaError("$.budget: must be >= 0");
  return c;
}

Json to_json(const DistSpec& d) {
  Json p;
  switch (d.family()) {
    case Family::Exponential: p["rate"] = num(d.rate()); break;
    case Family::Weibull:
      p["shape"] = num(d.shape());
      p["rate"] = num(d.rate());
      break;
    case Family::Lomax:
      p["shape"] = num(d.shape());
      p["scale"] = num(d.scale());
      break;
    case Family::ParetoI: p["shape"] = num(d.shape()); break;
    case Family::ReflectedDFR: p["inner"] = to_json(d.inner()); break;
  }
  return {{"family", family_name(d.family())}, {"params", p}};
}

Json to_json(const SystemSpec& s) {
  Json j;
  j["kind"] = kind_name(s.kind());
  Json cs = Json::array();
  for (const auto& c : s.components()) cs.push_back({{"baseline", to_json(c.baseline)}, {"prop", num(c.prop)}});
  j["components"] = cs;
  if (s.split()) j["split"] = *s.split();
  return j;
}

Json to_json(const GeneratorSpec& g) {
  Json j;
  j["family"] = generator_name(g.family());
  if (g.family() != GeneratorFamily::Independence) j["theta"] = num(g.theta());
  j["dim"] = g.dim();
  return j;
}

Json to_json(const GridSpec& g) {
  Json j;
  j["kind"] = g.kind == GridSpec::Kind::X ? "x" : "u";
  if (g.kind == GridSpec::Kind::X) {
    j["lo"] = num(g.lo);
    j["hi"] = num(g.hi);
  } else {
    j["eps"] = num(g.eps);
  }
  j["n"] = g.n;
  j["tau_mono"] = num(g.tau_mono);
  j["tau_pt"] = num(g.tau_pt);
  return j;
}

Json to_json(const ShiftedSystem& s) {
  return {{"baseline", to_json(s.baseline)}, {"shifts", num_array(s.shifts)}, {"generator", to_json(s.generator)}};
}

Json to_json(const OrderVerdict& v) {
  Json j;
  j["relation"] = to_string(v.relation);
  j["outcome"] = to_string(v.outcome);
  if (v.witness) j["witness"] = {{"x", num(v.witness->x)}, {"lhs", num(v.witness->lhs)}, {"rhs", num(v.witness->rhs)}};
  j["grid"] = to_json(v.grid);
  j["guard_hits"] = v.guard_hits;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const SchurCertificate& c) {
  Json j;
  j["mode"] = to_string(c.mode);
  j["verdict"] = to_string(c.verdict);
  j["samples"] = c.samples;
  j["pairs"] = c.pairs;
  j["failed_evaluations"] = c.failed_evaluations;
  j["min_delta"] = num(c.min_delta);
  j["max_delta"] = num(c.max_delta);
  if (c.witness) {
    j["witness"] = {{"point", witness_json(c.witness)}, {"i", c.witness_i}, {"j", c.witness_j}, {"delta", num(c.witness_delta)}};
  }
  return j;
}

Json to_json(const MonotoneCertificate& c) {
  Json j;
  j["direction"] = to_string(c.direction);
  j["verdict"] = to_string(c.verdict);
  j["samples"] = c.samples;
  j["failed_evaluations"] = c.failed_evaluations;
  if (c.witness) j["witness"] = {{"point", witness_json(c.witness)}, {"i", c.witness_i}, {"slope", num(c.witness_slope)}};
  return j;
}

Json to_json(const TheoremCase& c) {
  Json j;
  j["theorem"] = to_string(c.id);
  if (!c.label.empty()) j["label"] = c.label;
  j["scenario"] = scenario_json(c.scenario);
  if (c.xgrid) j["xgrid"] = to_json(*c.xgrid);
  if (c.ugrid) j["ugrid"] = to_json(*c.ugrid);
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["theorem"] = to_string(r.id());
  j["case"] = to_json(r.scenario);
  j["hypothesis_satisfied"] = r.hypothesis_satisfied;
  j["hypothesis"] = conditions_json(r.hypothesis);
  Json c;
  c["statement"] = r.conclusion.statement;
  c["outcome"] = to_string(r.conclusion.outcome);
  if (r.conclusion.verdict) c["verdict"] = to_json(*r.conclusion.verdict);
  if (!r.conclusion.values.empty()) {
    Json vs = Json::array();
    for (const auto& v : r.conclusion.values) {
      vs.push_back({{"name", v.name},
                    {"value", num(v.value)},
                    {"reference", num(v.reference)},
                    {"tolerance", num(v.tolerance)},
                    {"ok", v.ok}});
    }
    c["values"] = vs;
  }
  j["conclusion"] = c;
  if (!r.obligations.empty()) j["obligations"] = conditions_json(r.obligations);
  j["consistent"] = r.consistent;
  j["error"] = r.error;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const ScanConfig& c) {
  Json j;
  j["theorem"] = to_string(c.id);
  j["strategy"] = to_string(c.strategy);
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["levels"] = c.levels;
  Json b;
  Json ranges = Json::object();
  for (const auto& [k, v] : c.box.ranges) ranges[k] = {num(v.lo), num(v.hi)};
  b["ranges"] = ranges;
  b["families"] = c.box.families;
  b["generators"] = c.box.generators;
  b["branches"] = c.box.branches;
  b["structured"] = num(c.box.structured);
  j["box"] = b;
  return j;
}

Json to_json(const ScanSummary& s) {
  return {{"total", s.total},
          {"satisfied", s.satisfied},
          {"satisfied_and_holds", s.satisfied_and_holds},
          {"vacuous", s.vacuous},
          {"inconsistent", s.inconsistent},
          {"inconclusive", s.inconclusive},
          {"errors", s.errors},
          {"obligation_failures", s.obligation_failures},
          {"non_vacuous_fraction", num(s.non_vacuous_fraction())}};
}

Json to_json(const ScanResult& r) {
  Json reports = Json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  return {{"config", to_json(r.config)}, {"summary", to_json(r.summary)}, {"reports", reports}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

void write_reports_csv(std::ostream& out, const std::vector<TheoremReport>& reports) {
  out << "index,theorem,label,hypothesis_flags,hypothesis_satisfied,outcome,consistent,error\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::string flags;
    for (const auto& c : r.hypothesis) flags += c.satisfied ? '1' : '0';
    out << i << ',' << to_string(r.id()) << ',' << csv_field(r.scenario.label) << ',' << (flags.empty() ? "-" : flags) << ','
        << (r.hypothesis_satisfied ? 1 : 0) << ',' << to_string(r.conclusion.outcome) << ','
        << (r.consistent ? 1 : 0) << ',' << (r.error ? 1 : 0) << '\n';
  }
}

}  // namespace ordrel
