#include <catch_amalgamated.hpp>

#include <cmath>

#include "ordrel/errors.hpp"
#include "ordrel/systems.hpp"
#include "support.hpp"

using namespace ordrel;
using Catch::Matchers::WithinRel;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}
}  // namespace

TEST_CASE("Weibull minima variances of the first example") {
  // mpmath: (1/S)^(2/a) (G(2/a+1) - G(1/a+1)^2)
  CHECK_THAT(weibull_min_variance(vec({1.7, 2.0, 0.9}), 0.7), WithinRel(0.043782389401984426651, 1e-12));
  CHECK_THAT(weibull_min_variance(vec({1.0, 3.0, 2.3}), 0.7), WithinRel(0.017826378471834864132, 1e-12));
}

TEST_CASE("Lomax minima moments of the second example are exact rationals") {
  CHECK_THAT(lomax_min_moments(vec({1, 4, 7})).variance, WithinRel(12.0 / 1210.0, 1e-14));
  CHECK_THAT(lomax_min_moments(vec({1.2, 3.5, 7.2})).variance, WithinRel(11.9 / 1176.219, 1e-13));
  CHECK_THAT(lomax_min_moments(vec({1, 4, 7})).mean, WithinRel(1.0 / 11.0, 1e-14));
}

TEST_CASE("Lomax moments need enough tail") {
  CHECK_THROWS_AS(lomax_min_moments(vec({0.5, 0.4})), MomentUndefinedError);
  try {
    lomax_min_moments(vec({1.0, 0.5}));
    FAIL("expected MomentUndefinedError");
  } catch (const MomentUndefinedError& e) {
    CHECK(e.order() == 2);
  }
}

TEST_CASE("numeric moments agree with the closed forms") {
  const OrderStatDist w(SystemSpec::series(DistSpec::weibull(0.7, 1.0), vec({1.7, 2.0, 0.9})));
  CHECK_THAT(numeric_variance(w), WithinRel(0.043782389401984426651, 1e-6));
  const OrderStatDist l(SystemSpec::series(DistSpec::lomax(1.0, 1.0), vec({1.2, 3.5, 7.2})));
  CHECK_THAT(numeric_variance(l), WithinRel(11.9 / 1176.219, 1e-6));
  // max of Lomax(3, 1) and Lomax(4, 1); mpmath quadrature of the tail integrals
  const OrderStatDist m(SystemSpec(SystemKind::ParallelPRHR,
                                   {{DistSpec::lomax(3.0, 1.0), 1.0}, {DistSpec::lomax(4.0, 1.0), 1.0}}));
  CHECK_THAT(numeric_moments(m, 1), WithinRel(0.66666666666666666667, 1e-7));
  CHECK_THAT(numeric_variance(m), WithinRel(0.822222222222, 1e-6));
}

TEST_CASE("numeric moments refuse heavy tails") {
  const OrderStatDist p(SystemSpec::series(DistSpec::pareto1(1.0), vec({1.0, 0.8})));
  CHECK_THROWS_AS(numeric_moments(p, 2), MomentUndefinedError);
  // Tail exponent 2.5: mean 5/3 and second moment 5.
  const OrderStatDist q(SystemSpec::series(DistSpec::pareto1(1.0), vec({1.5, 1.0})));
  CHECK_THAT(numeric_moments(q, 1), WithinRel(5.0 / 3.0, 1e-6));
  CHECK_THAT(numeric_moments(q, 2), WithinRel(5.0, 1e-4));
  const OrderStatDist r(SystemSpec::parallel(DistSpec::reflected(DistSpec::lomax(0.8, 1.0)), vec({1.0, 1.0})));
  CHECK_THROWS_AS(numeric_moments(r, 2), MomentUndefinedError);
}

TEST_CASE("Lomax g derivatives match high-precision values") {
  // mpmath differentiation of alpha / (u^alpha - 1) at alpha = 1.3, u = 2.5
  CHECK_THAT(lomax_g_prime(1.3, 2.5), WithinRel(-0.3104058730662752901, 1e-12));
  CHECK_THAT(lomax_g_second(1.3, 2.5), WithinRel(0.1327618631572294391, 1e-12));
}

TEST_CASE("property: Lomax g derivatives match finite differences") {
  testing::Gen g(201);
  for (int i = 0; i < 500; ++i) {
    g.trace.clear();
    const double a = g.uniform(0.2, 8.0);
    const double u = 1.0 + g.log_uniform(1e-2, 50.0);
    const double h = 1e-4 * a;
    const double d1 = (lomax_g(a + h, u) - lomax_g(a - h, u)) / (2 * h);
    const double d2 = (lomax_g(a + h, u) - 2 * lomax_g(a, u) + lomax_g(a - h, u)) / (h * h);
    INFO(g.trace);
    CHECK(testing::rel_close(lomax_g_prime(a, u), d1, 1e-6));
    CHECK(std::abs(lomax_g_second(a, u) - d2) <= 1e-4 * std::max(1.0, std::abs(d2)));
  }
}

TEST_CASE("Lomax g stays finite for large alpha ln u") {
  CHECK(std::isfinite(lomax_g_prime(60.0, 1e6)));
  CHECK(std::isfinite(lomax_g_second(60.0, 1e6)));
  CHECK(lomax_g_second(60.0, 1e6) >= 0.0);
}

TEST_CASE("parallel Lomax reversed hazard") {
  // mpmath: sum alpha_i / (u^alpha_i - 1) / (x + theta), x = 1.5, theta = 1
  CHECK_THAT(lomax_parallel_rev_hazard(vec({2, 2, 2}), 1.0, 1.5), WithinRel(0.45714285714285714286, 1e-13));
  CHECK_THAT(lomax_parallel_rev_hazard(vec({1, 2, 3}), 1.0, 1.5), WithinRel(0.5010989010989010989, 1e-13));
  CHECK_THROWS_AS(lomax_parallel_rev_hazard(vec({1, 2}), 1.0, 0.0), DomainError);
  const OrderStatDist o(SystemSpec(SystemKind::ParallelPRHR, {{DistSpec::lomax(1.0, 2.0), 1.0},
                                                             {DistSpec::lomax(2.0, 2.0), 1.0}}));
  CHECK_THAT(rev_hazard(o, 0.7), WithinRel(lomax_parallel_rev_hazard(vec({1, 2}), 2.0, 0.7), 1e-12));
}

TEST_CASE("system specs validate their structure") {
  const auto e = DistSpec::exponential(1.0);
  CHECK_THROWS_AS(SystemSpec::series(e, vec({1.0, -1.0})), DomainError);
  CHECK_THROWS_AS(SystemSpec(SystemKind::SeriesPHR, {}), DomainError);
  CHECK_THROWS_AS(SystemSpec(SystemKind::SeriesPHR, {{e, 1.0}, {e, 1.0}}, 0), DomainError);
  CHECK_THROWS_AS(SystemSpec(SystemKind::SeriesPHR, {{e, 1.0}, {DistSpec::exponential(2.0), 1.0}, {e, 1.0}}, 1),
                  DomainError);
  const auto m = SystemSpec::mixed(SystemKind::SeriesPHR, e, vec({1, 2}), DistSpec::lomax(2, 1), vec({0.5}));
  CHECK(m.split() == std::size_t{2});
  CHECK(m.front_sum() == 3.0);
  CHECK(m.back_sum() == 0.5);
  CHECK_FALSE(m.same_baseline());
}

TEST_CASE("property: series systems are PHR and parallel systems PRHR") {
  testing::Gen g(202);
  for (int i = 0; i < 500; ++i) {
    g.trace.clear();
    const DistSpec d = g.lifetime();
    const Eigen::VectorXd p = g.vector(g.integer(1, 5), 0.2, 3.0);
    const OrderStatDist mn(SystemSpec::series(d, p));
    const OrderStatDist mx(SystemSpec::parallel(d, p));
    const double x = quantile(d, g.uniform(0.02, 0.98));
    INFO(g.trace);
    CHECK(testing::rel_close(sf(mn, x), std::pow(sf(d, x), p.sum()), 1e-12));
    CHECK(testing::rel_close(cdf(mx, x), std::pow(cdf(d, x), p.sum()), 1e-12));
    CHECK(testing::rel_close(hazard(mn, x), p.sum() * hazard(d, x), 1e-12));
    CHECK(testing::rel_close(rev_hazard(mx, x), p.sum() * rev_hazard(d, x), 1e-12));
    const double u = g.uniform(0.01, 0.99);
    CHECK(testing::rel_close(cdf(mn, quantile(mn, u)), u, 1e-10));
    CHECK(testing::rel_close(cdf(mx, quantile(mx, u)), u, 1e-10));
  }
}

TEST_CASE("property: mixed systems invert by bisection") {
  testing::Gen g(203);
  for (int i = 0; i < 300; ++i) {
    g.trace.clear();
    const DistSpec a = g.lifetime();
    const DistSpec b = g.lifetime();
    const SystemKind kind = g.integer(0, 1) ? SystemKind::SeriesPHR : SystemKind::ParallelPRHR;
    const OrderStatDist o(SystemSpec::mixed(kind, a, g.vector(g.integer(1, 3), 0.2, 3.0), b,
                                            g.vector(g.integer(1, 3), 0.2, 3.0)));
    const double u = g.uniform(0.01, 0.99);
    INFO(g.trace);
    CHECK(std::abs(cdf(o, quantile(o, u)) - u) <= 1e-8);
  }
}

TEST_CASE("property: the series hazard is minus the log-derivative of the survival") {
  testing::Gen g(204);
  for (int i = 0; i < 300; ++i) {
    g.trace.clear();
    const DistSpec a = g.lifetime();
    const DistSpec b = g.lifetime();
    const SystemSpec s = SystemSpec::mixed(SystemKind::SeriesPHR, a, g.vector(g.integer(1, 3), 0.2, 3.0), b,
                                           g.vector(g.integer(1, 3), 0.2, 3.0));
    const double x = quantile(OrderStatDist(s), g.uniform(0.05, 0.95));
    const double h = 1e-5 * std::abs(x);
    const double fd = -(std::log(min_sf(s, x + h)) - std::log(min_sf(s, x - h))) / (2.0 * h);
    INFO(g.trace);
    CHECK(testing::rel_close(min_hazard(s, x), fd, 1e-4));
  }
}

TEST_CASE("property: the parallel Lomax reversed hazard is the log-derivative of the cdf") {
  testing::Gen g(205);
  for (int i = 0; i < 300; ++i) {
    g.trace.clear();
    const int n = g.integer(2, 5);
    const Eigen::VectorXd alphas = g.vector(n, 0.2, 6.0);
    const double theta = g.log_uniform(0.2, 5.0);
    const double x = theta * g.log_uniform(1e-2, 1e2);
    const auto log_cdf_max = [&](double t) {
      double s = 0.0;
      for (double al : alphas) s += std::log(cdf(DistSpec::lomax(al, theta), t));
      return s;
    };
    const double h = 1e-5 * x;
    const double fd = (log_cdf_max(x + h) - log_cdf_max(x - h)) / (2.0 * h);
    INFO(g.trace);
    CHECK(testing::rel_close(lomax_parallel_rev_hazard(alphas, theta, x), fd, 1e-4));
  }
}
