#include <catch_amalgamated.hpp>

#include <cmath>

#include "ordrel/distributions.hpp"
#include "ordrel/errors.hpp"
#include "ordrel/numerics.hpp"
#include "support.hpp"

using namespace ordrel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values below are mpmath evaluations at 30 digits.

TEST_CASE("exponential closed forms") {
  const auto d = DistSpec::exponential(1.0);
  CHECK_THAT(sf(d, 1.0), WithinRel(std::exp(-1.0), 1e-15));
  CHECK_THAT(hazard(d, 3.0), WithinRel(1.0, 1e-15));
  CHECK_THAT(quantile(d, 0.5), WithinRel(std::log(2.0), 1e-15));
  CHECK(sf(d, -1.0) == 1.0);
  CHECK(pdf(d, -1.0) == 0.0);
}

TEST_CASE("Weibull(0.7, 1.3) reference values") {
  const auto d = DistSpec::weibull(0.7, 1.3);
  CHECK_THAT(sf(d, 0.8), WithinRel(0.32889919149779358455, 1e-13));
  CHECK_THAT(pdf(d, 0.8), WithinRel(0.32002005986729731069, 1e-13));
  CHECK_THAT(hazard(d, 0.8), WithinRel(0.97300348599198110408, 1e-13));
  CHECK_THAT(quantile(d, 0.3), WithinRel(0.15762068601179105755, 1e-13));
  const Density at_zero = density(d, 0.0);
  CHECK(at_zero.unbounded);
  CHECK(pdf(d, 0.0) == kUnboundedDensity);
}

TEST_CASE("Lomax(2.5, 1.5) reference values") {
  const auto d = DistSpec::lomax(2.5, 1.5);
  CHECK_THAT(sf(d, 2.0), WithinRel(0.12024251094636314886, 1e-13));
  CHECK_THAT(pdf(d, 2.0), WithinRel(0.085887507818830820615, 1e-13));
  CHECK_THAT(hazard(d, 2.0), WithinRel(0.71428571428571428571, 1e-13));
  CHECK_THAT(rev_hazard(d, 2.0), WithinRel(0.097626344631883492725, 1e-13));
  CHECK_THAT(quantile(d, 0.9), WithinRel(2.2678296472643701666, 1e-13));
}

TEST_CASE("Pareto-I(1.7) reference values") {
  const auto d = DistSpec::pareto1(1.7);
  CHECK_THAT(sf(d, 3.0), WithinRel(0.15448768559065659339, 1e-13));
  CHECK_THAT(hazard(d, 3.0), WithinRel(0.56666666666666666667, 1e-13));
  CHECK_THAT(quantile(d, 0.5), WithinRel(1.5034066538560548941, 1e-13));
  CHECK(support(d).lo == 1.0);
  CHECK(cdf(d, 0.5) == 0.0);
}

TEST_CASE("reflected Lomax(2, 1) reference values") {
  const auto d = DistSpec::reflected(DistSpec::lomax(2.0, 1.0));
  CHECK_THAT(cdf(d, -0.5), WithinRel(0.44444444444444444444, 1e-14));
  CHECK_THAT(sf(d, -0.5), WithinRel(0.55555555555555555556, 1e-14));
  CHECK_THAT(rev_hazard(d, -0.5), WithinRel(1.3333333333333333333, 1e-14));
  CHECK_THAT(hazard(d, -0.5), WithinRel(1.0666666666666666667, 1e-14));
  CHECK(support(d).hi == 0.0);
  CHECK(rev_hazard(d, 1.0) == 0.0);
  CHECK_THROWS_AS(hazard(d, 0.0), TailError);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(DistSpec::exponential(0.0), DomainError);
  CHECK_THROWS_AS(DistSpec::weibull(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(DistSpec::lomax(1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(DistSpec::pareto1(kInf), DomainError);
  CHECK_THROWS_AS(quantile(DistSpec::exponential(1.0), 1.0), DomainError);
  CHECK_THROWS_AS(sf(DistSpec::exponential(1.0), std::nan("")), DomainError);
}

TEST_CASE("property: quantile inverts the cdf") {
  testing::Gen g(101);
  for (int i = 0; i < 2000; ++i) {
    g.trace.clear();
    const DistSpec d = g.any();
    const double u = g.uniform(1e-6, 1.0 - 1e-6);
    const double x = quantile(d, u);
    INFO(g.trace);
    CHECK(testing::rel_close(cdf(d, x), u, 1e-10));
  }
}

TEST_CASE("property: sf + cdf = 1 and log forms agree") {
  testing::Gen g(102);
  for (int i = 0; i < 2000; ++i) {
    g.trace.clear();
    const DistSpec d = g.any();
    const double x = quantile(d, g.uniform(1e-4, 1.0 - 1e-4));
    INFO(g.trace);
    CHECK_THAT(sf(d, x) + cdf(d, x), WithinAbs(1.0, 1e-14));
    CHECK(testing::rel_close(std::exp(log_sf(d, x)), sf(d, x), 1e-13));
    CHECK(testing::rel_close(std::exp(log_cdf(d, x)), cdf(d, x), 1e-13));
  }
}

TEST_CASE("property: hazard = pdf/sf and rev_hazard = pdf/cdf") {
  testing::Gen g(103);
  for (int i = 0; i < 2000; ++i) {
    g.trace.clear();
    const DistSpec d = g.any();
    const double x = quantile(d, g.uniform(0.01, 0.99));
    INFO(g.trace);
    CHECK(testing::rel_close(hazard(d, x), pdf(d, x) / sf(d, x), 1e-10));
    CHECK(testing::rel_close(rev_hazard(d, x), pdf(d, x) / cdf(d, x), 1e-10));
  }
}

TEST_CASE("property: pdf is the derivative of the cdf") {
  testing::Gen g(104);
  for (int i = 0; i < 500; ++i) {
    g.trace.clear();
    const DistSpec d = g.any();
    const double x = quantile(d, g.uniform(0.05, 0.95));
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    const double fd = (cdf(d, x + h) - cdf(d, x - h)) / (2.0 * h);
    INFO(g.trace);
    CHECK(testing::rel_close(fd, pdf(d, x), 1e-5));
  }
}

TEST_CASE("property: reflection swaps the two tails") {
  testing::Gen g(105);
  for (int i = 0; i < 1000; ++i) {
    g.trace.clear();
    const DistSpec inner = g.lifetime();
    const DistSpec r = DistSpec::reflected(inner);
    const double x = quantile(inner, g.uniform(0.01, 0.99));
    INFO(g.trace);
    CHECK(testing::rel_close(cdf(r, -x), sf(inner, x), 1e-14));
    CHECK(testing::rel_close(rev_hazard(r, -x), hazard(inner, x), 1e-12));
    const TailIndex ti = tail_index(inner), tr = tail_index(r);
    CHECK(tr.left == ti.right);
    CHECK(tr.right == ti.left);
  }
}

TEST_CASE("ageing classes of the families") {
  const auto grid = default_ageing_grid();
  CHECK(classify_ageing(DistSpec::weibull(0.6, 1.0), grid).dfr);
  CHECK_FALSE(classify_ageing(DistSpec::weibull(0.6, 1.0), grid).ifr);
  CHECK(classify_ageing(DistSpec::weibull(2.0, 1.0), grid).ifr);
  CHECK_FALSE(classify_ageing(DistSpec::weibull(2.0, 1.0), grid).dfr);
  const auto e = classify_ageing(DistSpec::exponential(2.0), grid);
  CHECK(e.ifr);
  CHECK(e.dfr);
  CHECK(e.drhr);
  CHECK(classify_ageing(DistSpec::lomax(2.0, 1.0), grid).dfr);
  // Hazard 0 on [0, 1), then 1.5 / x: not monotone on the lifetime half-line.
  const auto p = classify_ageing(DistSpec::pareto1(1.5), grid);
  CHECK_FALSE(p.dfr);
  CHECK_FALSE(p.ifr);
  const auto rp = classify_ageing(DistSpec::reflected(DistSpec::pareto1(1.5)), grid);
  CHECK_FALSE(rp.irhr);
  CHECK(classify_ageing(DistSpec::reflected(DistSpec::lomax(2.0, 1.0)), grid).irhr);
  // A reflected DFR lifetime has an increasing reversed hazard.
  const auto r = classify_ageing(DistSpec::reflected(DistSpec::lomax(2.0, 1.0)), grid);
  CHECK(r.irhr);
  CHECK_FALSE(r.drhr);
}

TEST_CASE("tail indices") {
  CHECK(tail_index(DistSpec::lomax(2.5, 3.0)).right == 2.5);
  CHECK(tail_index(DistSpec::pareto1(1.2)).right == 1.2);
  CHECK(std::isinf(tail_index(DistSpec::weibull(0.5, 1.0)).right));
}

TEST_CASE("property: densities integrate to one") {
  testing::Gen g(107);
  for (int i = 0; i < 200; ++i) {
    g.trace.clear();
    const DistSpec d = g.any();
    const Interval s = d.support();
    // Split at the median and map each half onto [0, inf) with an exponential
    // change of variable, which tames both edge singularities (Weibull shape
    // < 1) and algebraic tails.
    const double m = quantile(d, 0.5);
    const double w = std::max(1.0, std::abs(m));
    const auto piece = [&](double end, double dir) {
      return integrate(
                 [&](double t) {
                   const double e = std::exp(-t);
                   const double x = std::isfinite(end) ? end + (m - end) * e : m + dir * w * (std::exp(t) - 1.0);
                   const double jac = std::isfinite(end) ? std::abs(m - end) * e : w * std::exp(t);
                   const double v = pdf(d, x) * jac;
                   return std::isfinite(v) ? v : 0.0;
                 },
                 0.0, kInf, 1e-12)
          .value;
    };
    const double total = piece(s.lo, -1.0) + piece(s.hi, 1.0);
    INFO(g.trace);
    CHECK(std::abs(total - 1.0) <= 1e-6);
  }
}
