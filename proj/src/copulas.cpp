#include "ordrel/copulas.hpp"

#include <algorithm>
#include <cmath>

#include "ordrel/errors.hpp"
#include "ordrel/numerics.hpp"

namespace ordrel {

std::string to_string(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::Independence: return "Independence";
    case GeneratorFamily::Clayton: return "Clayton";
    case GeneratorFamily::Frank: return "Frank";
  }
  return "?";
}

namespace {

void require_dim(int dim) {
  if (dim < 2) throw DomainError("GeneratorSpec: dimension must be at least 2");
}

}  // namespace

GeneratorSpec GeneratorSpec::independence(int dim) {
  require_dim(dim);
  GeneratorSpec g;
  g.dim_ = dim;
  return g;
}

GeneratorSpec GeneratorSpec::clayton(double theta, int dim) {
  require_dim(dim);
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("Clayton: theta must be positive");
  GeneratorSpec g;
  g.family_ = GeneratorFamily::Clayton;
  g.theta_ = theta;
  g.dim_ = dim;
  return g;
}

GeneratorSpec GeneratorSpec::frank(double theta, int dim) {
  require_dim(dim);
  if (theta == 0.0 || !std::isfinite(theta)) throw DomainError("Frank: theta must be non-zero");
  if (theta < 0.0 && dim > 2) throw DomainError("Frank: negative theta gives a copula only in dimension 2");
  GeneratorSpec g;
  g.family_ = GeneratorFamily::Frank;
  g.theta_ = theta;
  g.dim_ = dim;
  return g;
}

double psi(const GeneratorSpec& g, double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("psi: argument must be >= 0");
  if (x == kInf) return 0.0;
  if (x == 0.0) return 1.0;
  const double t = g.theta();
  switch (g.family()) {
    case GeneratorFamily::Independence:
      return std::exp(-x);
    case GeneratorFamily::Clayton:
      return std::exp(-std::log1p(t * x) / t);
    case GeneratorFamily::Frank:
      return -std::log1p(std::expm1(-t) * std::exp(-x)) / t;
  }
  throw DomainError("psi: unknown family");
}

double phi(const GeneratorSpec& g, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("phi: argument must lie in [0, 1]");
  if (u == 0.0) return kPhiAtZero;
  const double t = g.theta();
  switch (g.family()) {
    case GeneratorFamily::Independence:
      return -std::log(u);
    case GeneratorFamily::Clayton:
      return std::expm1(-t * std::log(u)) / t;
    case GeneratorFamily::Frank:
      return -std::log(std::expm1(-t * u) / std::expm1(-t));
  }
  throw DomainError("phi: unknown family");
}

double log_psi(const GeneratorSpec& g, double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("log_psi: argument must be >= 0");
  if (x == kInf) return -kInf;
  const double t = g.theta();
  switch (g.family()) {
    case GeneratorFamily::Independence:
      return -x;
    case GeneratorFamily::Clayton:
      return -std::log1p(t * x) / t;
    case GeneratorFamily::Frank: {
      // psi = (-c/t) * e^-x * log1p(s)/s with c = expm1(-t), s = c e^-x.
      const double c = std::expm1(-t);
      const double s = c * std::exp(-x);
      const double ratio = s == 0.0 ? 1.0 : std::log1p(s) / s;
      return std::log(-c / t) - x + std::log(ratio);
    }
  }
  throw DomainError("log_psi: unknown family");
}

double copula_value(const GeneratorSpec& g, const Eigen::VectorXd& u) {
  if (u.size() != g.dim()) throw DomainError("copula_value: dimension mismatch");
  double acc = 0.0;
  for (double v : u) acc += phi(g, v);
  return psi(g, acc);
}

GridSpec default_generator_grid() { return GridSpec::x_grid(0.0, 20.0, 512); }

namespace {

// Smallest and largest scaled second difference of log psi over the grid.
template <class Pred>
bool second_differences(const GeneratorSpec& g, const GridSpec& grid, Pred ok) {
  grid.validate();
  if (grid.kind != GridSpec::Kind::X || grid.lo < 0.0) throw DomainError("log-convexity: needs an x-grid on [0, inf)");
  const Eigen::ArrayXd xs = grid.points();
  Eigen::ArrayXd l(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) l[i] = log_psi(g, xs[i]);
  for (Eigen::Index i = 1; i + 1 < xs.size(); ++i) {
    const double d2 = l[i + 1] - 2.0 * l[i] + l[i - 1];
    const double tol = grid.tau_mono * std::max({1.0, std::abs(l[i - 1]), std::abs(l[i + 1])});
    if (!ok(d2, tol)) return false;
  }
  return true;
}

}  // namespace

bool is_log_convex(const GeneratorSpec& g, const GridSpec& grid) {
  return second_differences(g, grid, [](double d2, double tol) { return d2 >= -tol; });
}

bool is_log_concave(const GeneratorSpec& g, const GridSpec& grid) {
  return second_differences(g, grid, [](double d2, double tol) { return d2 <= tol; });
}

GridSpec default_superadditivity_grid() { return GridSpec::x_grid(0.0, 10.0, 64); }

SuperAdditivity super_additive_check(const std::function<double(double)>& h, const GridSpec& grid) {
  grid.validate();
  if (grid.kind != GridSpec::Kind::X) throw DomainError("super_additive_check: needs an x-grid");
  const Eigen::ArrayXd xs = grid.points();
  const double reach = grid.hi * (1.0 + 1e-12);

  auto eval = [&](double x) -> std::optional<double> {
    try {
      const double v = h(x);
      if (std::isfinite(v)) return v;
    } catch (const std::domain_error&) {
    } catch (const std::range_error&) {
    }
    return std::nullopt;
  };

  Eigen::ArrayXd hx(xs.size());
  std::vector<bool> valid(static_cast<std::size_t>(xs.size()));
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const auto v = eval(xs[i]);
    valid[static_cast<std::size_t>(i)] = v.has_value();
    hx[i] = v.value_or(0.0);
  }

  SuperAdditivity out;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    for (Eigen::Index j = i; j < xs.size(); ++j) {
      const double x = xs[i];
      const double y = xs[j];
      if (x + y > reach) break;
      const auto hxy = eval(x + y);
      if (!hxy || !valid[static_cast<std::size_t>(i)] || !valid[static_cast<std::size_t>(j)]) {
        ++out.failed_evaluations;
        continue;
      }
      ++out.pairs;
      const double sum = hx[i] + hx[j];
      const double tol = grid.tau_pt * std::max({1.0, std::abs(sum), std::abs(*hxy)});
      if (*hxy < sum - tol && !out.x) {
        out.x = x;
        out.y = y;
        out.sum = sum;
        out.combined = *hxy;
      }
    }
  }
  out.holds = !out.x && out.failed_evaluations == 0;
  return out;
}

std::function<double(double)> composition(const GeneratorSpec& a, const GeneratorSpec& b) {
  return [a, b](double x) { return phi(a, psi(b, x)); };
}

void ShiftedSystem::validate() const {
  if (generator.dim() != shifts.size()) throw DomainError("ShiftedSystem: generator dimension must match shifts");
  if (!shifts.allFinite()) throw DomainError("ShiftedSystem: shifts must be finite");
}

double J1(const ShiftedSystem& s, double x) {
  s.validate();
  double acc = 0.0;
  for (double mu : s.shifts) acc += phi(s.generator, std::clamp(sf(s.baseline, x + mu), 0.0, 1.0));
  return psi(s.generator, acc);
}

double J2(const ShiftedSystem& s, double x) {
  s.validate();
  double acc = 0.0;
  for (double mu : s.shifts) acc += phi(s.generator, std::clamp(cdf(s.baseline, x + mu), 0.0, 1.0));
  return 1.0 - psi(s.generator, acc);
}

DependentMinimum::DependentMinimum(ShiftedSystem s) : s_(std::move(s)) { s_.validate(); }

DependentMaximum::DependentMaximum(ShiftedSystem s) : s_(std::move(s)) { s_.validate(); }

Interval support(const DependentMinimum& d) {
  const Interval b = d.system().baseline.support();
  const double m = d.system().shifts.maxCoeff();
  return {b.lo - m, b.hi - m};
}

double sf(const DependentMinimum& d, double x) { return J1(d.system(), x); }

double cdf(const DependentMinimum& d, double x) { return 1.0 - J1(d.system(), x); }

double quantile(const DependentMinimum& d, double u) {
  const auto& s = d.system();
  const double guess = quantile(s.baseline, u) - s.shifts.mean();
  return bisect_quantile([&](double x) { return cdf(d, x); }, u, support(d), guess);
}

Interval support(const DependentMaximum& d) {
  const Interval b = d.system().baseline.support();
  const double m = d.system().shifts.minCoeff();
  return {b.lo - m, b.hi - m};
}

double sf(const DependentMaximum& d, double x) { return J2(d.system(), x); }

double cdf(const DependentMaximum& d, double x) { return 1.0 - J2(d.system(), x); }

double quantile(const DependentMaximum& d, double u) {
  const auto& s = d.system();
  const double guess = quantile(s.baseline, u) - s.shifts.mean();
  return bisect_quantile([&](double x) { return cdf(d, x); }, u, support(d), guess);
}

}  // namespace ordrel
