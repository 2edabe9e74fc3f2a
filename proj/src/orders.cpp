#include "ordrel/orders.hpp"

#include <algorithm>

namespace ordrel {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::St: return "st";
    case Relation::Hr: return "hr";
    case Relation::Rh: return "rh";
    case Relation::Lr: return "lr";
    case Relation::Disp: return "disp";
    case Relation::Star: return "star";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "Holds";
    case Outcome::Fails: return "Fails";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Relation relation_from_string(const std::string& s) {
  for (Relation r : {Relation::St, Relation::Hr, Relation::Rh, Relation::Lr, Relation::Disp, Relation::Star}) {
    if (to_string(r) == s) return r;
  }
  throw DomainError("unknown relation '" + s + "'");
}

Outcome outcome_from_string(const std::string& s) {
  for (Outcome o : {Outcome::Holds, Outcome::Fails, Outcome::Inconclusive}) {
    if (to_string(o) == s) return o;
  }
  throw DomainError("unknown outcome '" + s + "'");
}

namespace detail {

void PointwiseTest::add(double x, std::optional<double> lhs, std::optional<double> rhs) {
  if (!lhs || !rhs) {
    ++guard_hits_;
    return;
  }
  const double slack = tau_ * std::max({1.0, std::abs(*lhs), std::abs(*rhs)});
  if (*lhs > *rhs + slack && !witness_) witness_ = Witness{x, *lhs, *rhs};
}

Outcome PointwiseTest::outcome() const {
  if (witness_) return Outcome::Fails;
  return guard_hits_ > 0 ? Outcome::Inconclusive : Outcome::Holds;
}

void MonotoneTest::add(double x, std::optional<double> v) {
  if (!v) {
    ++guard_hits_;
    return;
  }
  if (prev_) {
    const double slack = tau_ * std::max({1.0, std::abs(*prev_), std::abs(*v)});
    if (*v < *prev_ - slack && !witness_) witness_ = Witness{x, *prev_, *v};
  }
  prev_ = v;
}

Outcome MonotoneTest::outcome() const {
  if (witness_) return Outcome::Fails;
  return guard_hits_ > 0 ? Outcome::Inconclusive : Outcome::Holds;
}

namespace {

template <class T>
OrderVerdict make_single(Relation r, const GridSpec& g, const T& t) {
  OrderVerdict v;
  v.relation = r;
  v.grid = g;
  v.outcome = t.outcome();
  v.witness = t.witness();
  v.guard_hits = t.guard_hits();
  if (v.outcome == Outcome::Inconclusive) {
    v.note = std::to_string(t.guard_hits()) + " grid point(s) hit a tail or domain guard";
  }
  return v;
}

}  // namespace

OrderVerdict single_verdict(Relation r, const GridSpec& g, const PointwiseTest& t) { return make_single(r, g, t); }

OrderVerdict single_verdict(Relation r, const GridSpec& g, const MonotoneTest& t) { return make_single(r, g, t); }

OrderVerdict dual_verdict(Relation r, const GridSpec& g, const PointwiseTest& rate, const MonotoneTest& ratio) {
  OrderVerdict v;
  v.relation = r;
  v.grid = g;
  v.guard_hits = rate.guard_hits() + ratio.guard_hits();
  const Outcome a = rate.outcome();
  const Outcome b = ratio.outcome();
  v.witness = rate.witness() ? rate.witness() : ratio.witness();
  if (a == b) {
    v.outcome = a;
  } else if (a == Outcome::Fails && b == Outcome::Fails) {
    v.outcome = Outcome::Fails;
  } else if ((a == Outcome::Fails) != (b == Outcome::Fails) && a != Outcome::Inconclusive &&
             b != Outcome::Inconclusive) {
    v.outcome = Outcome::Inconclusive;
    v.note = "rate comparison " + to_string(a) + " but ratio monotonicity " + to_string(b);
  } else if (a == Outcome::Fails || b == Outcome::Fails) {
    // One side failed on valid points, the other hit guards.
    v.outcome = Outcome::Fails;
  } else {
    v.outcome = Outcome::Inconclusive;
  }
  if (v.outcome == Outcome::Inconclusive && v.note.empty()) {
    v.note = std::to_string(v.guard_hits) + " grid point(s) hit a tail or domain guard";
  }
  return v;
}

OrderVerdict with_implied_st(OrderVerdict v, const PointwiseTest& st) {
  if (v.fails() || st.outcome() != Outcome::Fails) return v;
  v.outcome = Outcome::Fails;
  v.witness = st.witness();
  v.note = "sf_A > sf_B at a grid point; " + to_string(v.relation) + " implies st, so it fails too";
  return v;
}

void require_kind(const GridSpec& g, GridSpec::Kind kind, Relation r) {
  g.validate();
  if (g.kind != kind) {
    throw DomainError("check_" + to_string(r) + ": needs " + (kind == GridSpec::Kind::X ? "an x-grid" : "a u-grid"));
  }
}

void require_overlap(Interval a, Interval b) {
  if (std::max(a.lo, b.lo) > std::min(a.hi, b.hi)) throw DomainError("order check: supports do not overlap");
}

}  // namespace detail

}  // namespace ordrel
