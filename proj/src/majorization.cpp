#include "ordrel/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "ordrel/errors.hpp"

namespace ordrel {

namespace {

void require_comparable(const ParamVector& a, const ParamVector& b) {
  if (a.size() != b.size()) throw DomainError("majorization: length mismatch");
  if (a.size() < 2) throw DomainError("majorization: vectors need at least two entries");
  if (!a.allFinite() || !b.allFinite()) throw DomainError("majorization: non-finite entry");
}

double tolerance(const ParamVector& a, const ParamVector& b) {
  const double mag = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return 1e-12 * static_cast<double>(a.size()) * mag;
}

ParamVector sorted(const ParamVector& v, bool descending) {
  ParamVector s = v;
  if (descending) {
    std::sort(s.begin(), s.end(), std::greater<>());
  } else {
    std::sort(s.begin(), s.end());
  }
  return s;
}

ParamVector prefix_sums(const ParamVector& v) {
  ParamVector out(v.size());
  std::partial_sum(v.begin(), v.end(), out.begin());
  return out;
}

// All ascending (or descending) prefix sums of a satisfy cmp against b's.
template <class Cmp>
bool prefixes(const ParamVector& a, const ParamVector& b, bool descending, Cmp cmp) {
  const double tol = tolerance(a, b);
  const ParamVector pa = prefix_sums(sorted(a, descending));
  const ParamVector pb = prefix_sums(sorted(b, descending));
  for (Eigen::Index k = 0; k < pa.size(); ++k) {
    if (!cmp(pa[k], pb[k], tol)) return false;
  }
  return true;
}

double step(double x) { return 1e-5 * (1.0 + std::abs(x)); }

// Central-difference partial derivative; nullopt when f misbehaves.
std::optional<double> partial(const ScalarFn& f, ParamVector a, Eigen::Index i) {
  const double h = step(a[i]);
  const double x = a[i];
  try {
    a[i] = x + h;
    const double up = f(a);
    a[i] = x - h;
    const double down = f(a);
    const double d = (up - down) / (2.0 * h);
    if (std::isfinite(d)) return d;
  } catch (const std::domain_error&) {
  } catch (const std::range_error&) {
  }
  return std::nullopt;
}

std::optional<double> value(const ScalarFn& f, const ParamVector& a) {
  try {
    const double v = f(a);
    if (std::isfinite(v)) return v;
  } catch (const std::domain_error&) {
  } catch (const std::range_error&) {
  }
  return std::nullopt;
}

void validate_box(const Box& region) {
  if (region.lo.size() != region.hi.size() || region.lo.size() < 2) throw DomainError("Box: bad dimensions");
  for (Eigen::Index i = 0; i < region.dim(); ++i) {
    if (!std::isfinite(region.lo[i]) || !std::isfinite(region.hi[i]) || !(region.lo[i] <= region.hi[i])) {
      throw DomainError("Box: bounds must be finite with lo <= hi");
    }
  }
}

// Uniform points in the box, shrunk so that central differences stay inside.
class Sampler {
 public:
  Sampler(const Box& region, std::uint64_t seed) : region_(region), rng_(seed) {}

  ParamVector next() {
    ParamVector a(region_.dim());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      double lo = region_.lo[i];
      double hi = region_.hi[i];
      const double margin = 2.0 * std::max(step(lo), step(hi));
      if (hi - lo > 2.0 * margin) {
        lo += margin;
        hi -= margin;
      }
      a[i] = std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    return a;
  }

  ParamVector permute(const ParamVector& a) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(a.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng_);
    ParamVector out(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out[i] = a[idx[static_cast<std::size_t>(i)]];
    return out;
  }

 private:
  const Box& region_;
  std::mt19937_64 rng_;
};

}  // namespace

bool majorizes(const ParamVector& a, const ParamVector& b) {
  require_comparable(a, b);
  if (std::abs(a.sum() - b.sum()) > tolerance(a, b)) return false;
  return prefixes(a, b, false, [](double x, double y, double tol) { return x >= y - tol; });
}

bool weak_submajorizes(const ParamVector& a, const ParamVector& b) {
  require_comparable(a, b);
  return prefixes(a, b, true, [](double x, double y, double tol) { return x <= y + tol; });
}

bool weak_supermajorizes(const ParamVector& a, const ParamVector& b) {
  require_comparable(a, b);
  return prefixes(a, b, false, [](double x, double y, double tol) { return x >= y - tol; });
}

Box Box::cube(Eigen::Index n, double lo, double hi) {
  return {ParamVector::Constant(n, lo), ParamVector::Constant(n, hi)};
}

std::string to_string(SchurMode m) { return m == SchurMode::Convex ? "convex" : "concave"; }

std::string to_string(Monotonicity m) { return m == Monotonicity::Increasing ? "increasing" : "decreasing"; }

std::string to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::Certified: return "certified";
    case CertVerdict::Refuted: return "refuted";
    case CertVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SchurCertificate schur_certify(const ScalarFn& f, const Box& region, SchurMode mode, const SchurOptions& opts) {
  validate_box(region);
  if (opts.samples < 1) throw DomainError("schur_certify: need at least one sample");
  Sampler sampler(region, opts.seed);

  for (int k = 0; k < opts.symmetry_checks; ++k) {
    const ParamVector a = sampler.next();
    const auto fa = value(f, a);
    const auto fp = value(f, sampler.permute(a));
    if (fa && fp && std::abs(*fa - *fp) > 1e-9 * std::max({1.0, std::abs(*fa), std::abs(*fp)})) {
      throw PreconditionError("schur_certify: function is not symmetric under permutation");
    }
  }

  SchurCertificate cert;
  cert.mode = mode;
  cert.samples = opts.samples;
  cert.min_delta = std::numeric_limits<double>::infinity();
  cert.max_delta = -std::numeric_limits<double>::infinity();
  const double sign = mode == SchurMode::Convex ? 1.0 : -1.0;
  const Eigen::Index n = region.dim();

  for (int s = 0; s < opts.samples; ++s) {
    const ParamVector a = sampler.next();
    const auto fa = value(f, a);
    std::vector<std::optional<double>> grad(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) grad[static_cast<std::size_t>(i)] = partial(f, a, i);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const auto& gi = grad[static_cast<std::size_t>(i)];
        const auto& gj = grad[static_cast<std::size_t>(j)];
        if (!fa || !gi || !gj) {
          ++cert.failed_evaluations;
          continue;
        }
        ++cert.pairs;
        const double delta = (a[i] - a[j]) * (*gi - *gj);
        cert.min_delta = std::min(cert.min_delta, delta);
        cert.max_delta = std::max(cert.max_delta, delta);
        // Difference-quotient noise scales with |f| and with the gap a_i - a_j.
        const double tol = 1e-6 * std::max(1.0, std::abs(*fa)) * std::abs(a[i] - a[j]);
        if (sign * delta < -tol && (!cert.witness || sign * delta < sign * cert.witness_delta)) {
          cert.witness = a;
          cert.witness_i = static_cast<int>(i);
          cert.witness_j = static_cast<int>(j);
          cert.witness_delta = delta;
        }
      }
    }
  }
  if (cert.pairs == 0) {
    cert.min_delta = cert.max_delta = 0.0;
  }
  if (cert.witness) {
    cert.verdict = CertVerdict::Refuted;
  } else if (cert.failed_evaluations > 0 || cert.pairs == 0) {
    cert.verdict = CertVerdict::Inconclusive;
  } else {
    cert.verdict = CertVerdict::Certified;
  }
  return cert;
}

MonotoneCertificate monotone_certify(const ScalarFn& f, const Box& region, Monotonicity direction,
                                     const SchurOptions& opts) {
  validate_box(region);
  if (opts.samples < 1) throw DomainError("monotone_certify: need at least one sample");
  Sampler sampler(region, opts.seed);
  MonotoneCertificate cert;
  cert.direction = direction;
  cert.samples = opts.samples;
  const double sign = direction == Monotonicity::Increasing ? 1.0 : -1.0;
  for (int s = 0; s < opts.samples; ++s) {
    const ParamVector a = sampler.next();
    const auto fa = value(f, a);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const auto d = partial(f, a, i);
      if (!fa || !d) {
        ++cert.failed_evaluations;
        continue;
      }
      const double tol = 1e-6 * std::max(1.0, std::abs(*fa));
      if (sign * *d < -tol && (!cert.witness || sign * *d < sign * cert.witness_slope)) {
        cert.witness = a;
        cert.witness_i = static_cast<int>(i);
        cert.witness_slope = *d;
      }
    }
  }
  if (cert.witness) {
    cert.verdict = CertVerdict::Refuted;
  } else if (cert.failed_evaluations > 0) {
    cert.verdict = CertVerdict::Inconclusive;
  } else {
    cert.verdict = CertVerdict::Certified;
  }
  return cert;
}

ImplicationResult monotone_schur_implication(const ScalarFn& f, const ParamVector& a, const ParamVector& b,
                                             SchurMode mode, const SchurOptions& opts) {
  require_comparable(a, b);
  const double lo = std::min(a.minCoeff(), b.minCoeff());
  const double hi = std::max(a.maxCoeff(), b.maxCoeff());
  const Box region = Box::cube(a.size(), lo, hi);

  ImplicationResult r;
  r.schur = schur_certify(f, region, mode, opts);
  r.increasing = monotone_certify(f, region, Monotonicity::Increasing, opts);
  r.decreasing = monotone_certify(f, region, Monotonicity::Decreasing, opts);
  r.sub = weak_submajorizes(a, b);
  r.super = weak_supermajorizes(a, b);
  r.fa = f(a);
  r.fb = f(b);

  const bool schur = r.schur.verdict == CertVerdict::Certified;
  const bool inc = r.increasing.verdict == CertVerdict::Certified;
  const bool dec = r.decreasing.verdict == CertVerdict::Certified;
  // Schur-concave results are the Schur-convex ones applied to -f.
  const int flip = mode == SchurMode::Convex ? -1 : 1;
  if (schur) {
    const bool sub_rule = mode == SchurMode::Convex ? inc : dec;
    const bool super_rule = mode == SchurMode::Convex ? dec : inc;
    if (r.sub && sub_rule) {
      r.implied = flip;
      r.used = WeakRelation::Sub;
    } else if (r.super && super_rule) {
      r.implied = flip;
      r.used = WeakRelation::Super;
    }
  }
  if (r.implied) {
    const double tol = 1e-9 * std::max({1.0, std::abs(r.fa), std::abs(r.fb)});
    r.confirmed = *r.implied < 0 ? r.fa <= r.fb + tol : r.fa >= r.fb - tol;
  }
  return r;
}

}  // namespace ordrel
