#include "ordrel/distributions.hpp"

#include <cmath>
#include <vector>

#include "ordrel/errors.hpp"
#include "ordrel/numerics.hpp"

namespace ordrel {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

bool base_family(const DistSpec& d) { return d.family() != Family::ReflectedDFR; }

// log sf for the four base families, valid for every real x.
double base_log_sf(const DistSpec& d, double x) {
  switch (d.family()) {
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -d.rate() * x;
    case Family::Weibull:
      return x <= 0.0 ? 0.0 : -d.rate() * std::pow(x, d.shape());
    case Family::Lomax:
      return x <= 0.0 ? 0.0 : -d.shape() * std::log1p(x / d.scale());
    case Family::ParetoI:
      return x <= 1.0 ? 0.0 : -d.shape() * std::log(x);
    case Family::ReflectedDFR:
      break;
  }
  throw DomainError("base_log_sf: reflected spec");
}

Density base_density(const DistSpec& d, double x) {
  const Interval s = d.support();
  if (x < s.lo) return {};
  switch (d.family()) {
    case Family::Exponential:
      return {d.rate() * std::exp(-d.rate() * x), false};
    case Family::Weibull: {
      const double a = d.shape();
      const double k = d.rate();
      if (x == 0.0) {
        if (a < 1.0) return {kUnboundedDensity, true};
        return {a == 1.0 ? k : 0.0, false};
      }
      return {a * k * std::pow(x, a - 1.0) * std::exp(-k * std::pow(x, a)), false};
    }
    case Family::Lomax:
      return {d.shape() / d.scale() * std::exp((-d.shape() - 1.0) * std::log1p(x / d.scale())), false};
    case Family::ParetoI:
      return {d.shape() * std::exp((-d.shape() - 1.0) * std::log(x)), false};
    case Family::ReflectedDFR:
      break;
  }
  throw DomainError("base_density: reflected spec");
}

double base_hazard(const DistSpec& d, double x) {
  if (x < d.support().lo) return 0.0;
  switch (d.family()) {
    case Family::Exponential:
      return d.rate();
    case Family::Weibull: {
      const double a = d.shape();
      if (x == 0.0) {
        if (a < 1.0) return kUnboundedDensity;
        return a == 1.0 ? d.rate() : 0.0;
      }
      return a * d.rate() * std::pow(x, a - 1.0);
    }
    case Family::Lomax:
      return d.shape() / (d.scale() + x);
    case Family::ParetoI:
      return d.shape() / x;
    case Family::ReflectedDFR:
      break;
  }
  throw DomainError("base_hazard: reflected spec");
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Exponential: return "Exponential";
    case Family::Weibull: return "Weibull";
    case Family::Lomax: return "Lomax";
    case Family::ParetoI: return "ParetoI";
    case Family::ReflectedDFR: return "ReflectedDFR";
  }
  return "?";
}

DistSpec DistSpec::exponential(double rate) {
  require_positive(rate, "Exponential rate");
  DistSpec d;
  d.family_ = Family::Exponential;
  d.rate_ = rate;
  return d;
}

DistSpec DistSpec::weibull(double shape, double rate) {
  require_positive(shape, "Weibull shape");
  require_positive(rate, "Weibull rate");
  DistSpec d;
  d.family_ = Family::Weibull;
  d.shape_ = shape;
  d.rate_ = rate;
  return d;
}

DistSpec DistSpec::lomax(double shape, double scale) {
  require_positive(shape, "Lomax shape");
  require_positive(scale, "Lomax scale");
  DistSpec d;
  d.family_ = Family::Lomax;
  d.shape_ = shape;
  d.scale_ = scale;
  return d;
}

DistSpec DistSpec::pareto1(double shape) {
  require_positive(shape, "ParetoI shape");
  DistSpec d;
  d.family_ = Family::ParetoI;
  d.shape_ = shape;
  return d;
}

DistSpec DistSpec::reflected(const DistSpec& inner) {
  DistSpec d;
  d.family_ = Family::ReflectedDFR;
  d.inner_ = std::make_shared<const DistSpec>(inner);
  return d;
}

const DistSpec& DistSpec::inner() const {
  if (!inner_) throw DomainError("inner(): not a reflected distribution");
  return *inner_;
}

Interval DistSpec::support() const {
  switch (family_) {
    case Family::ParetoI:
      return {1.0, kInf};
    case Family::ReflectedDFR: {
      const Interval s = inner_->support();
      return {-s.hi, -s.lo};
    }
    default:
      return {0.0, kInf};
  }
}

bool DistSpec::operator==(const DistSpec& other) const {
  if (family_ != other.family_) return false;
  switch (family_) {
    case Family::Exponential: return rate_ == other.rate_;
    case Family::Weibull: return shape_ == other.shape_ && rate_ == other.rate_;
    case Family::Lomax: return shape_ == other.shape_ && scale_ == other.scale_;
    case Family::ParetoI: return shape_ == other.shape_;
    case Family::ReflectedDFR: return *inner_ == *other.inner_;
  }
  return false;
}

Interval support(const DistSpec& d) { return d.support(); }

double log_sf(const DistSpec& d, double x) {
  if (std::isnan(x)) throw DomainError("log_sf: NaN argument");
  if (base_family(d)) return base_log_sf(d, x);
  return log_cdf(d.inner(), -x);
}

double log_cdf(const DistSpec& d, double x) {
  if (std::isnan(x)) throw DomainError("log_cdf: NaN argument");
  if (base_family(d)) return log1mexp(base_log_sf(d, x));
  return log_sf(d.inner(), -x);
}

double sf(const DistSpec& d, double x) {
  if (base_family(d)) return std::exp(log_sf(d, x));
  return cdf(d.inner(), -x);
}

double cdf(const DistSpec& d, double x) {
  if (base_family(d)) return -std::expm1(log_sf(d, x));
  return sf(d.inner(), -x);
}

Density density(const DistSpec& d, double x) {
  if (std::isnan(x)) throw DomainError("density: NaN argument");
  if (base_family(d)) return base_density(d, x);
  return density(d.inner(), -x);
}

double pdf(const DistSpec& d, double x) { return density(d, x).value; }

double inverse_log_sf(const DistSpec& d, double log_s) {
  if (!(log_s < 0.0)) throw DomainError("inverse_log_sf: log survival must be negative");
  switch (d.family()) {
    case Family::Exponential:
      return -log_s / d.rate();
    case Family::Weibull:
      return std::pow(-log_s / d.rate(), 1.0 / d.shape());
    case Family::Lomax:
      return d.scale() * std::expm1(-log_s / d.shape());
    case Family::ParetoI:
      return std::exp(-log_s / d.shape());
    case Family::ReflectedDFR:
      return -inverse_log_cdf(d.inner(), log_s);
  }
  throw DomainError("inverse_log_sf: unknown family");
}

double inverse_log_cdf(const DistSpec& d, double log_u) {
  if (!(log_u < 0.0)) throw DomainError("inverse_log_cdf: log probability must be negative");
  if (d.family() == Family::ReflectedDFR) return -inverse_log_sf(d.inner(), log_u);
  return inverse_log_sf(d, log1mexp(log_u));
}

double quantile(const DistSpec& d, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
  if (d.family() == Family::ReflectedDFR) return -inverse_log_sf(d.inner(), std::log(u));
  return inverse_log_sf(d, std::log1p(-u));
}

double hazard(const DistSpec& d, double x) {
  if (std::isnan(x)) throw DomainError("hazard: NaN argument");
  const Interval s = d.support();
  if (std::isfinite(s.hi) && x >= s.hi) throw TailError(Tail::Right, "hazard: survival function vanishes");
  if (base_family(d)) return base_hazard(d, x);
  return rev_hazard(d.inner(), -x);
}

double rev_hazard(const DistSpec& d, double x) {
  if (std::isnan(x)) throw DomainError("rev_hazard: NaN argument");
  const Interval s = d.support();
  if (x <= s.lo) throw TailError(Tail::Left, "rev_hazard: distribution function vanishes");
  if (base_family(d)) {
    // f/F = r * S / (1 - S) = r / expm1(-log S)
    return base_hazard(d, x) / std::expm1(-base_log_sf(d, x));
  }
  if (x > s.hi) return 0.0;
  return hazard(d.inner(), -x);
}

TailIndex tail_index(const DistSpec& d) {
  switch (d.family()) {
    case Family::Lomax:
    case Family::ParetoI:
      return {kInf, d.shape()};
    case Family::ReflectedDFR: {
      const TailIndex t = tail_index(d.inner());
      return {t.right, t.left};
    }
    default:
      return {};
  }
}

GridSpec default_ageing_grid() { return GridSpec::u_grid(1e-4, 512); }

AgeingClass classify_ageing(const DistSpec& d, const GridSpec& grid) {
  grid.validate();
  const Interval s = d.support();
  std::vector<double> xs;
  if (grid.kind == GridSpec::Kind::U) {
    for (double u : grid.points()) xs.push_back(quantile(d, u));
  } else {
    for (double x : grid.points()) {
      if (s.interior(x)) xs.push_back(x);
    }
  }
  if (xs.size() < 32) throw DomainError("classify_ageing: fewer than 32 grid points inside the support");

  // Rate values in grid order, with the zero stretch between the support and
  // the origin attached where it exists.
  auto monotone = [&](auto rate, bool increasing, bool lead_zero, bool trail_zero) {
    std::vector<double> vs;
    if (lead_zero) vs.push_back(0.0);
    for (double x : xs) vs.push_back(rate(x));
    if (trail_zero) vs.push_back(0.0);
    double prev = vs.front();
    for (std::size_t i = 1; i < vs.size(); ++i) {
      const double cur = vs[i];
      const double slack = grid.tau_mono * std::max({1.0, std::abs(prev), std::abs(cur)});
      if (increasing ? cur < prev - slack : cur > prev + slack) return false;
      prev = cur;
    }
    return true;
  };
  auto h = [&](double x) { return hazard(d, x); };
  auto rh = [&](double x) { return rev_hazard(d, x); };

  AgeingClass out;
  out.grid = grid;
  const bool gap_left = s.lo > 0.0;
  const bool gap_right = s.hi < 0.0;
  out.ifr = monotone(h, true, gap_left, false);
  out.dfr = monotone(h, false, gap_left, false);
  out.irhr = monotone(rh, true, false, gap_right);
  out.drhr = monotone(rh, false, false, gap_right);
  return out;
}

}  // namespace ordrel
