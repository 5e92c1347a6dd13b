#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/parameter.hpp"

using namespace cdyn;

TEST_CASE("mandelbrot_member: pinned verdicts") {
  CHECK(mandelbrot_member(Cx(-2.0)).bounded);   // 0, -2, 2, 2, ...
  CHECK(mandelbrot_member(Cx(-1.0)).bounded);   // 2-cycle
  CHECK(mandelbrot_member(Cx(0.0)).bounded);
  CHECK(mandelbrot_member(Cx(0.0, 1.0)).bounded);
  CHECK(mandelbrot_member(Cx(0.25)).bounded);   // parabolic crawl stays below 2

  const MemberResult half = mandelbrot_member(Cx(0.5));
  CHECK(!half.bounded);
  CHECK(half.escape_index > 0);
  CHECK(half.potential > 0.0);
  CHECK(!mandelbrot_member(Cx(1.0)).bounded);
  CHECK(!mandelbrot_member(Cx(0.3, 0.6)).bounded);
}

TEST_CASE("mandelbrot_member: verdict fields stay consistent") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(-2.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const Cx c(u(rng), u(rng));
    const MemberResult r = mandelbrot_member(c, 400);
    if (r.bounded) {
      CHECK(r.escape_index == -1);
      CHECK(r.potential == 0.0);
    } else {
      CHECK(r.escape_index >= 0);
      CHECK(r.potential > 0.0);
    }
  }
}

TEST_CASE("potential halves along the critical orbit") {
  // H(c) = 2 G_c(0) wherever both escape.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.2, 1.2);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 100; ++t) {
    const Cx c(u(rng), u(rng));
    const MemberResult r = mandelbrot_member(c);
    if (r.bounded) continue;
    const GreenValue g0 = green(QuadMap{c}, Cx(0.0));
    if (!g0.converged) continue;
    ++checked;
    CHECK(std::abs(r.potential - 2.0 * g0.value) < 1e-6);
  }
  CHECK(checked >= 50);
}

TEST_CASE("cardioid_contains: pinned parameters") {
  CHECK(cardioid_contains(Cx(0.0)));
  CHECK(!cardioid_contains(Cx(1.0)));
  CHECK(!cardioid_contains(Cx(0.25)));  // cusp sits on the boundary
  CHECK(cardioid_contains(Cx(0.0, 0.25)));
}

TEST_CASE("period2_disk_contains: pinned parameters") {
  CHECK(period2_disk_contains(Cx(-1.0)));
  CHECK(!period2_disk_contains(Cx(0.0)));
  CHECK(!period2_disk_contains(Cx(-0.75)));  // boundary excluded
}

TEST_CASE("closed-form regions sit inside the bounded set") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> ux(-0.8, 0.4);
  std::uniform_real_distribution<double> uy(-0.7, 0.7);
  int inside = 0;
  for (int t = 0; t < 6000 && inside < 1000; ++t) {
    const Cx c(ux(rng), uy(rng));
    if (!cardioid_contains(c)) continue;
    ++inside;
    CHECK(mandelbrot_member(c).bounded);
  }
  CHECK(inside == 1000);

  std::uniform_real_distribution<double> ur(0.0, 0.2);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < 200; ++t) {
    const Cx c = Cx(-1.0) + std::polar(ur(rng), ua(rng));
    REQUIRE(period2_disk_contains(c));
    CHECK(mandelbrot_member(c).bounded);
    const auto period = hyperbolic_period(c);
    REQUIRE(period.has_value());
    CHECK(*period == 2);
  }
}

TEST_CASE("no escape verdicts deep inside the main cardioid") {
  std::mt19937_64 rng(161803);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int t = 0; t < 200; ++t) {
    Cx c(u(rng), u(rng));
    if (std::abs(c) > 0.2) continue;
    CHECK(mandelbrot_member(c).bounded);
  }
}

TEST_CASE("hyperbolic_period: pinned parameters") {
  CHECK(hyperbolic_period(Cx(0.0)) == 1);
  CHECK(hyperbolic_period(Cx(-1.0)) == 2);
  CHECK(!hyperbolic_period(Cx(0.5)).has_value());
  // the 3-cycle component around -0.1226 + 0.7449i
  CHECK(hyperbolic_period(Cx(-0.12, 0.74)) == 3);
}

TEST_CASE("hyperbolic_period: argument validation") {
  CHECK_THROWS_AS((void)hyperbolic_period(Cx(0.0), 65), Error);
  CHECK_THROWS_AS((void)hyperbolic_period(Cx(0.0), 8, 0), Error);
  CHECK_THROWS_AS((void)mandelbrot_member(Cx(0.0), 0), Error);
}
