#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>

#include "ordrel/distributions.hpp"
#include "ordrel/errors.hpp"
#include "ordrel/grid.hpp"
#include "ordrel/numerics.hpp"

namespace ordrel {

enum class Relation { St, Hr, Rh, Lr, Disp, Star };
enum class Outcome { Holds, Fails, Inconclusive };

std::string to_string(Relation r);
std::string to_string(Outcome o);
Relation relation_from_string(const std::string& s);
Outcome outcome_from_string(const std::string& s);

/// A grid point where lhs <= rhs (up to tolerance) was expected and failed.
/// Monotonicity witnesses carry the two adjacent values: lhs at the previous
/// node, rhs at `x`.
struct Witness {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool operator==(const Witness&) const = default;
};

struct OrderVerdict {
  Relation relation = Relation::St;
  Outcome outcome = Outcome::Inconclusive;
  std::optional<Witness> witness;
  GridSpec grid;
  int guard_hits = 0;
  std::string note;

  bool holds() const { return outcome == Outcome::Holds; }
  bool fails() const { return outcome == Outcome::Fails; }
};

// Anything with a survival function and a support.
template <class D>
concept SurvivalModel = requires(const D& d, double x) {
  { sf(d, x) } -> std::convertible_to<double>;
  { cdf(d, x) } -> std::convertible_to<double>;
  { support(d) } -> std::convertible_to<Interval>;
};

template <class D>
concept QuantileModel = requires(const D& d, double u) {
  { quantile(d, u) } -> std::convertible_to<double>;
};

template <class D>
concept HazardModel = SurvivalModel<D> && requires(const D& d, double x) {
  { hazard(d, x) } -> std::convertible_to<double>;
  { log_sf(d, x) } -> std::convertible_to<double>;
};

template <class D>
concept RevHazardModel = SurvivalModel<D> && requires(const D& d, double x) {
  { rev_hazard(d, x) } -> std::convertible_to<double>;
  { log_cdf(d, x) } -> std::convertible_to<double>;
};

namespace detail {

/// Evaluates f, mapping tail/domain exceptions and non-finite results to nullopt.
template <class F>
std::optional<double> guarded(F&& f) {
  try {
    const double v = f();
    if (std::isfinite(v)) return v;
  } catch (const std::domain_error&) {
  } catch (const std::range_error&) {
  }
  return std::nullopt;
}

/// Accumulates pointwise comparisons lhs <= rhs + tau * max(1, |lhs|, |rhs|).
class PointwiseTest {
 public:
  explicit PointwiseTest(double tau) : tau_(tau) {}
  void add(double x, std::optional<double> lhs, std::optional<double> rhs);
  void guard() { ++guard_hits_; }
  std::optional<Witness> witness() const { return witness_; }
  int guard_hits() const { return guard_hits_; }
  Outcome outcome() const;

 private:
  double tau_;
  std::optional<Witness> witness_;
  int guard_hits_ = 0;
};

/// Accumulates a sequence that should be non-decreasing: each value may dip
/// below its predecessor by at most tau * max(1, |prev|, |cur|). Guarded
/// points are skipped and the comparison resumes at the next valid one.
class MonotoneTest {
 public:
  explicit MonotoneTest(double tau) : tau_(tau) {}
  void add(double x, std::optional<double> v);
  std::optional<Witness> witness() const { return witness_; }
  int guard_hits() const { return guard_hits_; }
  Outcome outcome() const;

 private:
  double tau_;
  std::optional<double> prev_;
  std::optional<Witness> witness_;
  int guard_hits_ = 0;
};

OrderVerdict single_verdict(Relation r, const GridSpec& g, const PointwiseTest& t);
OrderVerdict single_verdict(Relation r, const GridSpec& g, const MonotoneTest& t);
/// Rate comparison and ratio monotonicity must agree; disagreement is Inconclusive.
OrderVerdict dual_verdict(Relation r, const GridSpec& g, const PointwiseTest& rate, const MonotoneTest& ratio);

/// hr, rh and lr each imply st, so a crossing of the survival functions on
/// the grid refutes them even where the rate and ratio tests see no violation
/// (for instance when the crossing is undone only beyond the grid).
OrderVerdict with_implied_st(OrderVerdict v, const PointwiseTest& st);
void require_kind(const GridSpec& g, GridSpec::Kind kind, Relation r);
void require_overlap(Interval a, Interval b);

/// Quantile of the equal-weight mixture (cdf_A + cdf_B) / 2 by bisection
/// between the two component quantiles.
template <class A, class B>
double mixture_quantile(const A& a, const B& b, double p) {
  const double qa = quantile(a, p);
  const double qb = quantile(b, p);
  if (qa == qb) return qa;
  auto mix = [&](double x) { return 0.5 * (cdf(a, x) + cdf(b, x)); };
  return bisect(mix, p, std::min(qa, qb), std::max(qa, qb));
}

}  // namespace detail

/// x-grid over [q(1e-4), q(1 - 1e-4)] of the pointwise mixture of A and B, 512 nodes.
template <class A, class B>
  requires QuantileModel<A> && QuantileModel<B> && SurvivalModel<A> && SurvivalModel<B>
GridSpec default_xgrid(const A& a, const B& b) {
  constexpr double kTail = 1e-4;
  detail::require_overlap(support(a), support(b));
  double lo = detail::mixture_quantile(a, b, kTail);
  double hi = detail::mixture_quantile(a, b, 1.0 - kTail);
  if (!(lo < hi)) hi = lo + std::max(1.0, std::abs(lo)) * 1e-6;
  return GridSpec::x_grid(lo, hi, 512);
}

inline GridSpec default_ugrid() { return GridSpec::u_grid(1e-3, 512); }

/// A <=_st B: sf_A <= sf_B pointwise.
template <SurvivalModel A, SurvivalModel B>
OrderVerdict check_st(const A& a, const B& b, const GridSpec& g) {
  detail::require_kind(g, GridSpec::Kind::X, Relation::St);
  detail::require_overlap(support(a), support(b));
  detail::PointwiseTest t(g.tau_pt);
  for (double x : g.points()) {
    t.add(x, detail::guarded([&] { return sf(a, x); }), detail::guarded([&] { return sf(b, x); }));
  }
  return detail::single_verdict(Relation::St, g, t);
}

/// A <=_hr B: hazard_A >= hazard_B pointwise and log(sf_B / sf_A) non-decreasing;
/// an st crossing on the grid also refutes it.
template <HazardModel A, HazardModel B>
OrderVerdict check_hr(const A& a, const B& b, const GridSpec& g) {
  detail::require_kind(g, GridSpec::Kind::X, Relation::Hr);
  detail::require_overlap(support(a), support(b));
  detail::PointwiseTest rate(g.tau_pt);
  detail::MonotoneTest ratio(g.tau_mono);
  detail::PointwiseTest st(g.tau_pt);
  for (double x : g.points()) {
    st.add(x, detail::guarded([&] { return sf(a, x); }), detail::guarded([&] { return sf(b, x); }));
    const auto la = detail::guarded([&] { return log_sf(a, x); });
    const auto lb = detail::guarded([&] { return log_sf(b, x); });
    // Beyond both right endpoints neither side is defined; nothing to compare.
    if (!la && !lb) continue;
    rate.add(x, detail::guarded([&] { return hazard(b, x); }), detail::guarded([&] { return hazard(a, x); }));
    ratio.add(x, la && lb ? std::optional<double>(*lb - *la) : std::nullopt);
  }
  return detail::with_implied_st(detail::dual_verdict(Relation::Hr, g, rate, ratio), st);
}

/// A <=_rh B: rev_hazard_A <= rev_hazard_B pointwise and log(cdf_B / cdf_A) non-decreasing;
/// an st crossing on the grid also refutes it.
template <RevHazardModel A, RevHazardModel B>
OrderVerdict check_rh(const A& a, const B& b, const GridSpec& g) {
  detail::require_kind(g, GridSpec::Kind::X, Relation::Rh);
  detail::require_overlap(support(a), support(b));
  detail::PointwiseTest rate(g.tau_pt);
  detail::MonotoneTest ratio(g.tau_mono);
  detail::PointwiseTest st(g.tau_pt);
  for (double x : g.points()) {
    st.add(x, detail::guarded([&] { return sf(a, x); }), detail::guarded([&] { return sf(b, x); }));
    const auto la = detail::guarded([&] { return log_cdf(a, x); });
    const auto lb = detail::guarded([&] { return log_cdf(b, x); });
    if (!la && !lb) continue;
    rate.add(x, detail::guarded([&] { return rev_hazard(a, x); }), detail::guarded([&] { return rev_hazard(b, x); }));
    ratio.add(x, la && lb ? std::optional<double>(*lb - *la) : std::nullopt);
  }
  return detail::with_implied_st(detail::dual_verdict(Relation::Rh, g, rate, ratio), st);
}

/// A <=_lr B: log pdf_B - log pdf_A non-decreasing, with log pdf = log hazard + log sf.
template <HazardModel A, HazardModel B>
OrderVerdict check_lr(const A& a, const B& b, const GridSpec& g) {
  detail::require_kind(g, GridSpec::Kind::X, Relation::Lr);
  detail::require_overlap(support(a), support(b));
  auto log_pdf = [](const auto& d, double x) { return std::log(hazard(d, x)) + log_sf(d, x); };
  detail::MonotoneTest t(g.tau_mono);
  detail::PointwiseTest st(g.tau_pt);
  for (double x : g.points()) {
    st.add(x, detail::guarded([&] { return sf(a, x); }), detail::guarded([&] { return sf(b, x); }));
    const auto la = detail::guarded([&] { return log_pdf(a, x); });
    const auto lb = detail::guarded([&] { return log_pdf(b, x); });
    t.add(x, la && lb ? std::optional<double>(*lb - *la) : std::nullopt);
  }
  return detail::with_implied_st(detail::single_verdict(Relation::Lr, g, t), st);
}

/// A <=_disp B: quantile_B(u) - quantile_A(u) non-decreasing in u.
template <QuantileModel A, QuantileModel B>
OrderVerdict check_disp(const A& a, const B& b, const GridSpec& g) {
  detail::require_kind(g, GridSpec::Kind::U, Relation::Disp);
  detail::MonotoneTest t(g.tau_mono);
  for (double u : g.points()) {
    const auto qa = detail::guarded([&] { return quantile(a, u); });
    const auto qb = detail::guarded([&] { return quantile(b, u); });
    t.add(u, qa && qb ? std::optional<double>(*qb - *qa) : std::nullopt);
  }
  return detail::single_verdict(Relation::Disp, g, t);
}

/// A <=_* B: log quantile_B(u) - log quantile_A(u) non-decreasing in u.
/// Throws DomainError when a quantile on the grid is not strictly positive.
template <QuantileModel A, QuantileModel B>
OrderVerdict check_star(const A& a, const B& b, const GridSpec& g) {
  detail::require_kind(g, GridSpec::Kind::U, Relation::Star);
  detail::MonotoneTest t(g.tau_mono);
  for (double u : g.points()) {
    const auto qa = detail::guarded([&] { return quantile(a, u); });
    const auto qb = detail::guarded([&] { return quantile(b, u); });
    if ((qa && !(*qa > 0.0)) || (qb && !(*qb > 0.0))) {
      throw DomainError("check_star: star order needs strictly positive quantiles");
    }
    t.add(u, qa && qb ? std::optional<double>(std::log(*qb) - std::log(*qa)) : std::nullopt);
  }
  return detail::single_verdict(Relation::Star, g, t);
}

/// Runs `r` with the default grid for that relation.
template <class A, class B>
OrderVerdict check(Relation r, const A& a, const B& b) {
  switch (r) {
    case Relation::St: return check_st(a, b, default_xgrid(a, b));
    case Relation::Hr: return check_hr(a, b, default_xgrid(a, b));
    case Relation::Rh: return check_rh(a, b, default_xgrid(a, b));
    case Relation::Lr: return check_lr(a, b, default_xgrid(a, b));
    case Relation::Disp: return check_disp(a, b, default_ugrid());
    case Relation::Star: return check_star(a, b, default_ugrid());
  }
  throw DomainError("check: unknown relation");
}

/// Runs `r` on a caller-supplied grid.
template <class A, class B>
OrderVerdict check(Relation r, const A& a, const B& b, const GridSpec& g) {
  switch (r) {
    case Relation::St: return check_st(a, b, g);
    case Relation::Hr: return check_hr(a, b, g);
    case Relation::Rh: return check_rh(a, b, g);
    case Relation::Lr: return check_lr(a, b, g);
    case Relation::Disp: return check_disp(a, b, g);
    case Relation::Star: return check_star(a, b, g);
  }
  throw DomainError("check: unknown relation");
}

}  // namespace ordrel
