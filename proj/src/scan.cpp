#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "ordrel/errors.hpp"
#include "ordrel/harness.hpp"

namespace ordrel {

Range ParameterBox::range(const std::string& key, Range fallback) const {
  const auto it = ranges.find(key);
  return it == ranges.end() ? fallback : it->second;
}

double RandomSource::uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

int RandomSource::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

int LatticeSource::digit(int radix) {
  const auto r = static_cast<std::uint64_t>(radix);
  const int d = static_cast<int>(rest_ % r);
  rest_ /= r;
  return d;
}

double LatticeSource::uniform(double lo, double hi) {
  const int d = digit(levels_);
  return lo + (d + 0.5) / levels_ * (hi - lo);
}

int LatticeSource::integer(int lo, int hi) { return lo + digit(hi - lo + 1); }

std::string to_string(Strategy s) { return s == Strategy::Random ? "random" : "grid"; }

Strategy strategy_from_string(const std::string& s) {
  if (s == "random") return Strategy::Random;
  if (s == "grid" || s == "lattice") return Strategy::Lattice;
  throw DomainError("unknown strategy '" + s + "'");
}

namespace {

// Defaults for every key a sampler reads.
const Range kN{2, 4};
const Range kProp{0.5, 3.0};
const Range kSumRatio{1.0, 1.5};
const Range kStrictRatio{1.05, 2.0};
const Range kPowerUp{1.0, 3.0};
const Range kPowerDown{1.0 / 3.0, 1.0};
const Range kRate{0.5, 2.0};
const Range kWeibullShapeDfr{0.3, 1.0};
const Range kWeibullShapeIfr{1.0, 2.5};
const Range kLomaxShape{0.5, 3.0};
const Range kLomaxScale{0.5, 2.0};
const Range kParetoShape{0.5, 3.0};
const Range kTheta{0.5, 2.0};
const Range kAlpha{0.5, 4.0};
const Range kShift{0.0, 2.0};
const Range kClayton{0.2, 3.0};
const Range kFrankNeg{-6.0, -0.5};
const Range kFrankPos{0.5, 6.0};

enum class Ageing { Dfr, Ifr, Any };

int draw_n(const ParameterBox& box, ParameterSource& src) {
  const Range r = box.range("n", kN);
  return src.integer(static_cast<int>(std::lround(r.lo)), static_cast<int>(std::lround(r.hi)));
}

template <class T>
const T& pick(const std::vector<T>& pool, ParameterSource& src) {
  return pool[static_cast<std::size_t>(src.integer(0, static_cast<int>(pool.size()) - 1))];
}

std::vector<std::string> pool_or(const std::vector<std::string>& pool, std::vector<std::string> fallback) {
  return pool.empty() ? fallback : pool;
}

DistSpec sample_family(const std::string& fam, Ageing ageing, const ParameterBox& box, ParameterSource& src) {
  if (fam == "exponential") return DistSpec::exponential(src.uniform(box.range("rate", kRate)));
  if (fam == "weibull") {
    Range shape = box.range("weibull_shape", ageing == Ageing::Ifr ? kWeibullShapeIfr : kWeibullShapeDfr);
    if (ageing == Ageing::Any) shape = box.range("weibull_shape", {0.3, 2.5});
    if (ageing == Ageing::Dfr) shape.hi = std::min(shape.hi, 1.0);
    if (ageing == Ageing::Ifr) shape.lo = std::max(shape.lo, 1.0);
    return DistSpec::weibull(src.uniform(shape), src.uniform(box.range("rate", kRate)));
  }
  if (fam == "lomax") {
    return DistSpec::lomax(src.uniform(box.range("lomax_shape", kLomaxShape)),
                           src.uniform(box.range("lomax_scale", kLomaxScale)));
  }
  if (fam == "pareto1") return DistSpec::pareto1(src.uniform(box.range("pareto_shape", kParetoShape)));
  throw DomainError("unknown family '" + fam + "'");
}

// Baseline whose survival function is the c-th power of d's.
DistSpec phr_power(const DistSpec& d, double c) {
  switch (d.family()) {
    case Family::Exponential: return DistSpec::exponential(d.rate() * c);
    case Family::Weibull: return DistSpec::weibull(d.shape(), d.rate() * c);
    case Family::Lomax: return DistSpec::lomax(d.shape() * c, d.scale());
    case Family::ParetoI: return DistSpec::pareto1(d.shape() * c);
    case Family::ReflectedDFR: break;
  }
  throw DomainError("phr_power: reflected baselines take prhr_power");
}

// Baseline whose cdf is the c-th power of a reflected d's.
DistSpec prhr_power(const DistSpec& d, double c) { return DistSpec::reflected(phr_power(d.inner(), c)); }

Eigen::VectorXd draw_props(int n, const ParameterBox& box, ParameterSource& src) {
  const Range r = box.range("prop", kProp);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = src.uniform(r);
  return v;
}

// Random props rescaled to the requested sum.
Eigen::VectorXd props_with_sum(int n, double sum, const ParameterBox& box, ParameterSource& src) {
  Eigen::VectorXd v = draw_props(n, box, src);
  return v * (sum / v.sum());
}

// A random T-transform: pulls two entries toward each other.
void t_transform(Eigen::VectorXd& v, ParameterSource& src) {
  const int n = static_cast<int>(v.size());
  const int i = src.integer(0, n - 1);
  int j = src.integer(0, n - 2);
  if (j >= i) ++j;
  const double lambda = src.uniform(0.0, 1.0);
  const double a = v[i], b = v[j];
  v[i] = lambda * a + (1.0 - lambda) * b;
  v[j] = lambda * b + (1.0 - lambda) * a;
}

// A vector weakly submajorized (sub = true) or weakly supermajorized by b:
// T-transforms followed by shrinking (growing) some entries.
Eigen::VectorXd weakly_below(const Eigen::VectorXd& b, bool sub, Range bounds, ParameterSource& src) {
  Eigen::VectorXd a = b;
  const int moves = src.integer(1, 3);
  for (int k = 0; k < moves; ++k) t_transform(a, src);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!src.bernoulli(0.5)) continue;
    const double f = src.uniform(0.0, 0.5);
    a[i] = sub ? a[i] - f * (a[i] - bounds.lo) : a[i] + f * (bounds.hi - a[i]);
  }
  return a;
}

Eigen::VectorXd draw_vector(int n, Range r, ParameterSource& src) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = src.uniform(r);
  return v;
}

GeneratorSpec draw_generator(const std::string& name, int dim, const ParameterBox& box, ParameterSource& src) {
  if (name == "independence") return GeneratorSpec::independence(dim);
  if (name == "clayton") return GeneratorSpec::clayton(src.uniform(box.range("clayton_theta", kClayton)), dim);
  if (name == "frank") {
    if (dim == 2 && src.bernoulli(0.5)) return GeneratorSpec::frank(src.uniform(box.range("frank_neg_theta", kFrankNeg)), 2);
    return GeneratorSpec::frank(src.uniform(box.range("frank_theta", kFrankPos)), dim);
  }
  throw DomainError("unknown generator '" + name + "'");
}

const std::vector<std::string> kDfrFamilies{"exponential", "weibull", "lomax", "pareto1"};
const std::vector<std::string> kSmoothFamilies{"exponential", "weibull", "lomax"};
const std::vector<std::string> kGenerators{"independence", "clayton", "frank"};

TheoremCase sample_T1(const ParameterBox& box, ParameterSource& src) {
  const auto fams = pool_or(box.families, kDfrFamilies);
  const bool structured = src.bernoulli(box.structured);
  const int n = draw_n(box, src);
  const DistSpec f0 = sample_family(pick(fams, src), structured ? Ageing::Dfr : Ageing::Any, box, src);
  const Eigen::VectorXd a = draw_props(n, box, src);
  if (structured) {
    const DistSpec g0 = phr_power(f0, src.uniform(box.range("power", kPowerUp)));
    const Eigen::VectorXd b = props_with_sum(n, a.sum() * src.uniform(box.range("sum_ratio", kSumRatio)), box, src);
    return {TheoremId::T1, SystemPair{SystemSpec::series(f0, a), SystemSpec::series(g0, b)}, {}, {}, "structured"};
  }
  const DistSpec g0 = sample_family(pick(fams, src), Ageing::Any, box, src);
  return {TheoremId::T1, SystemPair{SystemSpec::series(f0, a), SystemSpec::series(g0, draw_props(n, box, src))},
          {}, {}, "free"};
}

TheoremCase sample_T2(const ParameterBox& box, ParameterSource& src) {
  const auto fams = pool_or(box.families, kDfrFamilies);
  const bool structured = src.bernoulli(box.structured);
  const int n = draw_n(box, src);
  const DistSpec inner = sample_family(pick(fams, src), structured ? Ageing::Dfr : Ageing::Any, box, src);
  const DistSpec f0 = DistSpec::reflected(inner);
  const Eigen::VectorXd a = draw_props(n, box, src);
  if (structured) {
    const DistSpec g0 = prhr_power(f0, src.uniform(box.range("power", kPowerUp)));
    const Eigen::VectorXd b = props_with_sum(n, a.sum() * src.uniform(box.range("sum_ratio", kSumRatio)), box, src);
    return {TheoremId::T2, SystemPair{SystemSpec::parallel(f0, a), SystemSpec::parallel(g0, b)}, {}, {}, "structured"};
  }
  const DistSpec g0 = DistSpec::reflected(sample_family(pick(fams, src), Ageing::Any, box, src));
  return {TheoremId::T2, SystemPair{SystemSpec::parallel(f0, a), SystemSpec::parallel(g0, draw_props(n, box, src))},
          {}, {}, "free"};
}

TheoremCase sample_outliers(TheoremId id, const ParameterBox& box, ParameterSource& src) {
  TheoremCase c = id == TheoremId::C1 ? sample_T1(box, src) : sample_T2(box, src);
  const auto& pair = std::get<SystemPair>(c.scenario);
  const DistSpec f0 = pair.x.components().front().baseline;
  const DistSpec g0 = pair.y.components().front().baseline;
  const Range prop = box.range("prop", kProp);
  OutlierBlocks x{src.integer(1, 3), src.uniform(prop), src.integer(0, 3), src.uniform(prop)};
  OutlierBlocks y{src.integer(1, 3), src.uniform(prop), src.integer(0, 3), src.uniform(prop)};
  if (c.label == "structured") {
    const double sx = x.p * x.a1 + x.q * x.a2;
    const double sy = y.p * y.a1 + y.q * y.a2;
    const double scale = sx * src.uniform(box.range("sum_ratio", kSumRatio)) / sy;
    y.a1 *= scale;
    y.a2 *= scale;
  }
  return {id, OutlierScenario{f0, g0, x, y}, {}, {}, c.label};
}

TheoremCase sample_split(TheoremId id, const ParameterBox& box, ParameterSource& src) {
  const auto fams = pool_or(box.families, kSmoothFamilies);
  const bool structured = src.bernoulli(box.structured);
  const int n = std::max(2, draw_n(box, src));
  const int p = src.integer(1, n - 1);
  const DistSpec front = sample_family(pick(fams, src), Ageing::Any, box, src);
  const DistSpec back = sample_family(pick(fams, src), Ageing::Any, box, src);
  const Eigen::VectorXd af = draw_props(p, box, src);
  const Eigen::VectorXd ab = draw_props(n - p, box, src);
  Eigen::VectorXd bf, bb;
  if (structured) {
    bf = props_with_sum(p, af.sum() / src.uniform(box.range("strict_ratio", kStrictRatio)), box, src);
    bb = props_with_sum(n - p, ab.sum() / src.uniform(box.range("strict_ratio", kStrictRatio)), box, src);
  } else {
    bf = draw_props(p, box, src);
    bb = draw_props(n - p, box, src);
  }
  const SystemKind kind = id == TheoremId::T3 ? SystemKind::SeriesPHR : SystemKind::ParallelPRHR;
  return {id,
          SystemPair{SystemSpec::mixed(kind, front, af, back, ab), SystemSpec::mixed(kind, front, bf, back, bb)},
          {},
          {},
          structured ? "structured" : "free"};
}

TheoremCase sample_T5(const ParameterBox& box, ParameterSource& src) {
  const bool structured = src.bernoulli(box.structured);
  const int n = draw_n(box, src);
  const DistSpec f = DistSpec::pareto1(src.uniform(box.range("pareto_shape", kParetoShape)));
  const Eigen::VectorXd a = draw_props(n, box, src);
  const Eigen::VectorXd b = structured
                                ? props_with_sum(n, a.sum() * src.uniform(box.range("sum_ratio", kSumRatio)), box, src)
                                : draw_props(n, box, src);
  return {TheoremId::T5, SystemPair{SystemSpec::series(f, a), SystemSpec::series(f, b)}, {}, {},
          structured ? "structured" : "free"};
}

TheoremCase sample_T6(const ParameterBox& box, ParameterSource& src) {
  const bool structured = src.bernoulli(box.structured);
  const int n = draw_n(box, src);
  const Range ar = box.range("alpha", kAlpha);
  LomaxPair s;
  s.theta = src.uniform(box.range("theta", kTheta));
  s.alpha_star = draw_vector(n, ar, src);
  s.alpha = structured ? weakly_below(s.alpha_star, false, ar, src) : draw_vector(n, ar, src);
  return {TheoremId::T6, s, {}, {}, structured ? "structured" : "free"};
}

// Generator pairs (psi1, psi2) that meet the generator conditions of each branch.
std::pair<GeneratorSpec, GeneratorSpec> structured_generators(TheoremId id, Branch branch, int n,
                                                              const ParameterBox& box, ParameterSource& src) {
  const bool t7 = id == TheoremId::T7;
  if (branch == Branch::LogConvex) {
    if (src.bernoulli(0.25)) {
      const GeneratorSpec ind = GeneratorSpec::independence(n);
      const GeneratorSpec cl = draw_generator("clayton", n, box, src);
      // T7 needs phi1 o psi2 super-additive, T8 needs phi2 o psi1.
      return t7 ? std::pair{cl, ind} : std::pair{ind, cl};
    }
    GeneratorSpec a = draw_generator("clayton", n, box, src);
    GeneratorSpec b = draw_generator("clayton", n, box, src);
    const bool a_larger = a.theta() >= b.theta();
    if (t7) return a_larger ? std::pair{a, b} : std::pair{b, a};
    return a_larger ? std::pair{b, a} : std::pair{a, b};
  }
  const GeneratorSpec ind = GeneratorSpec::independence(n);
  if (t7) {
    if (n == 2 && src.bernoulli(0.3)) return {GeneratorSpec::frank(src.uniform(box.range("frank_neg_theta", kFrankNeg)), 2), ind};
    return {ind, src.bernoulli(0.7) ? draw_generator("clayton", n, box, src) : ind};
  }
  if (n == 2 && src.bernoulli(0.7)) return {ind, GeneratorSpec::frank(src.uniform(box.range("frank_neg_theta", kFrankNeg)), 2)};
  return {ind, ind};
}

TheoremCase sample_shifted(TheoremId id, const ParameterBox& box, ParameterSource& src) {
  const auto branches = pool_or(box.branches, {"log-convex", "log-concave"});
  const Branch branch = branch_from_string(pick(branches, src));
  const bool structured = src.bernoulli(box.structured);
  const int n = draw_n(box, src);
  const bool convex = branch == Branch::LogConvex;

  // Baseline ageing each branch asks for: T7 convex IFR, T7 concave DFR,
  // T8 convex IRHR (reflected DFR), T8 concave DRHR (lifetimes on [0, inf)).
  const bool reflected = id == TheoremId::T8 && convex;
  const Ageing ageing = !structured ? Ageing::Any : (id == TheoremId::T7 && convex ? Ageing::Ifr : Ageing::Dfr);
  std::vector<std::string> fams = pool_or(box.families, kSmoothFamilies);
  if (ageing == Ageing::Ifr) {
    fams.erase(std::remove_if(fams.begin(), fams.end(),
                              [](const std::string& f) { return f != "exponential" && f != "weibull"; }),
               fams.end());
    if (fams.empty()) fams = {"exponential", "weibull"};
  }
  const DistSpec base = sample_family(pick(fams, src), ageing, box, src);
  const DistSpec f = reflected ? DistSpec::reflected(base) : base;

  // W <=_st X on the convex branches, X <=_st W on the concave ones.
  DistSpec g = f;
  if (structured) {
    const bool w_below = convex;
    if (reflected) {
      g = prhr_power(f, src.uniform(box.range("power_down", kPowerDown)));
    } else {
      g = phr_power(f, w_below ? src.uniform(box.range("power", kPowerUp))
                               : src.uniform(box.range("power_down", kPowerDown)));
    }
  } else {
    const DistSpec other = sample_family(pick(fams, src), Ageing::Any, box, src);
    g = reflected ? DistSpec::reflected(other) : other;
  }

  const Range sr = box.range("shift", kShift);
  const Eigen::VectorXd mu_star = draw_vector(n, sr, src);
  const Eigen::VectorXd mu = structured ? weakly_below(mu_star, convex, sr, src) : draw_vector(n, sr, src);

  GeneratorSpec psi1 = GeneratorSpec::independence(n), psi2 = GeneratorSpec::independence(n);
  if (structured) {
    std::tie(psi1, psi2) = structured_generators(id, branch, n, box, src);
  } else {
    const auto gens = pool_or(box.generators, kGenerators);
    psi1 = draw_generator(pick(gens, src), n, box, src);
    psi2 = draw_generator(pick(gens, src), n, box, src);
  }
  ShiftedPair s{ShiftedSystem{f, mu, psi1}, ShiftedSystem{g, mu_star, psi2}, branch};
  return {id, s, {}, {}, structured ? "structured" : "free"};
}

}  // namespace

TheoremCase sample_case(TheoremId id, const ParameterBox& box, ParameterSource& src) {
  switch (id) {
    case TheoremId::T1: return sample_T1(box, src);
    case TheoremId::T2: return sample_T2(box, src);
    case TheoremId::C1:
    case TheoremId::C2: return sample_outliers(id, box, src);
    case TheoremId::T3:
    case TheoremId::T4: return sample_split(id, box, src);
    case TheoremId::T5: return sample_T5(box, src);
    case TheoremId::T6: return sample_T6(box, src);
    case TheoremId::T7:
    case TheoremId::T8: return sample_shifted(id, box, src);
    case TheoremId::Ex1:
    case TheoremId::Ex2: break;
  }
  throw DomainError("scan: examples are fixed cases, not scannable");
}

ScanSummary summarize(const std::vector<TheoremReport>& reports) {
  ScanSummary s;
  for (const auto& r : reports) {
    ++s.total;
    if (r.error) ++s.errors;
    if (r.hypothesis_satisfied) {
      ++s.satisfied;
      if (r.conclusion.outcome == Outcome::Holds) ++s.satisfied_and_holds;
    } else {
      ++s.vacuous;
    }
    if (!r.consistent) ++s.inconsistent;
    if (r.conclusion.outcome == Outcome::Inconclusive) ++s.inconclusive;
    if (std::any_of(r.obligations.begin(), r.obligations.end(), [](const Condition& c) { return !c.satisfied; })) {
      ++s.obligation_failures;
    }
  }
  return s;
}

ScanResult scan(const ScanConfig& config) {
  if (config.budget < 0) throw DomainError("scan: budget must be >= 0");
  if (config.levels < 1) throw DomainError("scan: levels must be >= 1");
  if (!(config.box.structured >= 0.0 && config.box.structured <= 1.0)) {
    throw DomainError("scan: structured fraction must lie in [0, 1]");
  }
  std::vector<TheoremCase> cases;
  cases.reserve(static_cast<std::size_t>(config.budget));
  RandomSource rng(config.seed);
  for (int i = 0; i < config.budget; ++i) {
    if (config.strategy == Strategy::Random) {
      cases.push_back(sample_case(config.id, config.box, rng));
    } else {
      LatticeSource lattice(static_cast<std::uint64_t>(i), config.levels);
      cases.push_back(sample_case(config.id, config.box, lattice));
    }
  }

  std::vector<std::optional<TheoremReport>> slots(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        slots[i] = run(cases[i]);
      } catch (const std::exception& e) {
        TheoremReport r(cases[i]);
        r.error = true;
        r.notes.push_back(std::string("evaluation error: ") + e.what());
        slots[i] = std::move(r);
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ScanResult out{config, {}, {}};
  out.reports.reserve(slots.size());
  for (auto& s : slots) out.reports.push_back(std::move(*s));
  out.summary = summarize(out.reports);
  return out;
}

}  // namespace ordrel
