#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ivgreen/errors.hpp"
#include "ivgreen/green.hpp"
#include "support.hpp"

using namespace ivgreen;
using ivgreen::testing::random_point_off;
using ivgreen::testing::random_real_off;
using ivgreen::testing::random_system;
using ivgreen::testing::rel_err;

TEST_SUITE("green") {

TEST_CASE("closed-form capacities") {
  CHECK(rel_err(capacity(IntervalSystem::make({{-2.0, 2.0}})), 1.0) <= 1e-8);
  CHECK(rel_err(capacity(IntervalSystem::make({{-1.0, 1.0}})), 0.5) <= 1e-8);
  CHECK(rel_err(capacity(IntervalSystem::make({{3.0, 10.0}})), 1.75) <= 1e-8);
  CHECK(rel_err(capacity(IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}})), std::sqrt(3.0) / 2.0) <= 1e-8);
  // Symmetric pair: sqrt(b^2 - a^2) / 2.
  CHECK(rel_err(capacity(IntervalSystem::make({{-3.0, -0.5}, {0.5, 3.0}})), std::sqrt(9.0 - 0.25) / 2.0) <= 1e-8);
  // Capacity is monotone under inclusion and scales linearly.
  auto e = IntervalSystem::make({{0.0, 1.0}, {2.0, 4.0}});
  auto bigger = IntervalSystem::make({{0.0, 1.5}, {2.0, 4.0}});
  CHECK(capacity(bigger) > capacity(e));
  auto scaled = IntervalSystem::make({{0.0, 3.0}, {6.0, 12.0}});
  CHECK(rel_err(capacity(scaled), 3.0 * capacity(e)) <= 1e-10);
}

TEST_CASE("complex Green's mapping on an interval") {
  auto unit = IntervalSystem::make({{-1.0, 1.0}});
  auto ev = green_inf(unit, cplx(2.0, 0.0));
  CHECK(rel_err(ev.phi, cplx(2.0 + std::sqrt(3.0), 0.0)) <= 1e-10);
  // phi(z) = z + sqrt(z^2 - 1) off the interval.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    cplx z = random_point_off(rng, unit, 0.05);
    cplx ref = z + unit.sqrt_h(z);
    CHECK(rel_err(green_inf(unit, z).phi, ref) <= 1e-10);
  }
}

TEST_CASE("modulus of phi equals exp(g)") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto sys = random_system(rng, 1 + trial % 4);
    InfinityGreen gi(sys);
    for (int i = 0; i < 10; ++i) {
      cplx z = random_point_off(rng, sys, 0.05);
      auto ev = gi(z);
      REQUIRE(std::abs(std::abs(ev.phi) - std::exp(ev.g)) <= 1e-12 * std::exp(ev.g));
    }
  }
}

TEST_CASE("period polynomial at infinity") {
  auto one = solve_r_inf(IntervalSystem::make({{-1.0, 1.0}}));
  CHECK(one.degree() == 0);
  CHECK(one(0.3) == doctest::Approx(1.0));
  // Symmetric two-band: r = x.
  auto sym = solve_r_inf(IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}}));
  const auto mono = sym.monomial();
  REQUIRE(mono.degree() == 1);
  CHECK(std::abs(mono[0]) < 1e-12);
  CHECK(mono[1] == doctest::Approx(1.0).epsilon(1e-12));
  // Translating the set translates the zero.
  auto shifted = solve_r_inf(IntervalSystem::make({{-0.5, 0.5}, {2.5, 3.5}}));
  CHECK(std::abs(shifted(1.5)) < 1e-12);
}

TEST_CASE("period polynomial with a finite pole") {
  auto unit = IntervalSystem::make({{-1.0, 1.0}});
  auto r = solve_r_x0(unit, 2.0);
  CHECK(r(2.0) == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
  // Analytic branch between symmetric bands: sqrt(H(0)) = -2 there.
  auto sym = IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}});
  auto rs = solve_r_x0(sym, 0.0);
  CHECK(rs(0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rs(1.7) == doctest::Approx(2.0).epsilon(1e-12));
  PoleGreen pg(IntervalSystem::make({{0.0, 1.0}, {2.0, 3.0}}), 4.0);
  for (double res : pg.gap_residuals()) CHECK(res < 1e-10);
}

TEST_CASE("r_inf has one zero in each gap") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto sys = random_system(rng, 2 + trial % 3);
    auto r = solve_r_inf(sys);
    for (const auto& gap : sys.gaps()) {
      const double lo = r(gap.lo), hi = r(gap.hi);
      CHECK(lo * hi < 0.0);
    }
  }
}

TEST_CASE("harmonic measures are probabilities") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    auto sys = random_system(rng, 1 + trial % 4);
    InfinityGreen gi(sys);
    double sum = 0.0;
    for (double w : gi.harmonic_measures()) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-10);
    double x0 = random_real_off(rng, sys, 0.05);
    PoleGreen pg(sys, x0);
    sum = 0.0;
    for (double w : pg.harmonic_measures()) sum += w;
    CHECK(std::abs(sum - 1.0) <= 1e-10);
  }
}

TEST_CASE("symmetric systems balance their measures") {
  auto sym = IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}});
  CHECK(std::abs(harmonic_measure_inf(sym, 0) - 0.5) <= 1e-10);
  CHECK(std::abs(harmonic_measure_at(sym, 0.0, 0) - 0.5) <= 1e-10);
  auto three = IntervalSystem::make({{-4.0, -3.0}, {-0.5, 0.5}, {3.0, 4.0}});
  CHECK(std::abs(harmonic_measure_inf(three, 0) - harmonic_measure_inf(three, 2)) <= 1e-10);
  // The band farther from a pole receives less mass.
  auto uneven = IntervalSystem::make({{0.0, 1.0}, {2.0, 4.0}});
  CHECK(harmonic_measure_inf(uneven, 1) > harmonic_measure_inf(uneven, 0));
}

TEST_CASE("Green's function is harmonic and vanishes on E") {
  auto sys = IntervalSystem::make({{-2.0, -1.0}, {0.0, 0.4}, {1.0, 2.0}});
  InfinityGreen gi(sys);
  const double h = 1e-3;
  for (cplx z : {cplx(0.5, 0.7), cplx(-3.0, 1.0), cplx(1.5, -0.5), cplx(0.7, 0.1)}) {
    const double lap = gi.g(z + h) + gi.g(z - h) + gi.g(z + cplx(0, h)) + gi.g(z - cplx(0, h)) - 4.0 * gi.g(z);
    CHECK(std::abs(lap) / (h * h) < 1e-4);
  }
  for (double x : {-1.5, 0.2, 1.9}) CHECK(gi.g(cplx(x, 1e-10)) < 1e-4);
  // g grows like log|z| + robin.
  const double big = 1e6;
  CHECK(gi.g(cplx(big, 0.0)) - std::log(big) == doctest::Approx(gi.robin_constant()).epsilon(1e-5));
  // Monotone along the ray away from E.
  double prev = 0.0;
  for (double y = 0.1; y < 5.0; y += 0.1) {
    const double v = gi.g(cplx(0.2, y));
    CHECK(v > prev);
    prev = v;
  }
  // Conjugate symmetry.
  CHECK(gi.g(cplx(0.3, 0.8)) == doctest::Approx(gi.g(cplx(0.3, -0.8))).epsilon(1e-12));
}

TEST_CASE("Green's function is symmetric in its arguments") {
  auto sys = IntervalSystem::make({{0.0, 1.0}, {2.0, 4.0}});
  // g(x0, inf) = g(inf, x0).
  for (double x0 : {-1.0, 1.5, 6.0}) {
    PoleGreen pg(sys, x0);
    CHECK(pg.g_at_infinity() == doctest::Approx(green_inf(sys, cplx(x0, 0.0)).g).epsilon(1e-10));
  }
  // g(x1, x0) = g(x0, x1).
  const double x0 = 1.3, x1 = 5.0;
  CHECK(green_pole(sys, x0, cplx(x1, 0.0)).g == doctest::Approx(green_pole(sys, x1, cplx(x0, 0.0)).g).epsilon(1e-10));
}

TEST_CASE("exponent is path independent modulo 2 pi i") {
  auto sys = IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}});
  InfinityGreen gi(sys);
  const cplx a(2.0, 0.0);
  const cplx z(0.3, 1.1);
  std::vector<cplx> p1 = {a, z};
  std::vector<cplx> p2 = {a, cplx(3.0, 2.0), cplx(-1.0, 3.0), z};
  cplx e1 = gi.exponent_along(p1), e2 = gi.exponent_along(p2);
  CHECK(std::abs(e1.real() - e2.real()) < 1e-11);
  const double turns = (e1.imag() - e2.imag()) / (2.0 * std::numbers::pi);
  CHECK(std::abs(turns - std::round(turns)) < 1e-10);
}

TEST_CASE("real-axis route agrees with nearby complex evaluation") {
  auto sys = IntervalSystem::make({{-2.0, -1.0}, {0.0, 0.4}, {1.0, 2.0}});
  InfinityGreen gi(sys);
  PoleGreen pg(sys, 0.7);
  for (double x : {-3.0, -0.5, 0.2 + 0.5, 0.9, 3.5}) {
    CHECK(gi.g(cplx(x, 0.0)) == doctest::Approx(gi.g(cplx(x, 1e-9))).epsilon(1e-7));
    if (std::abs(x - 0.7) > 0.1) CHECK(pg.g(cplx(x, 0.0)) == doctest::Approx(pg.g(cplx(x, 1e-9))).epsilon(1e-7));
  }
}

TEST_CASE("pole Green's function matches the disk formula, including next to the pole") {
  auto unit = IntervalSystem::make({{-1.0, 1.0}});
  const double x0 = 2.0;
  PoleGreen pg(unit, x0);
  const cplx w0 = green_inf(unit, cplx(x0, 0.0)).phi;
  for (cplx z : {cplx(0.3, 0.4), cplx(-2.0, 1.0), cplx(2.0, 1e-7), cplx(2.0 + 1e-9, 1e-9), cplx(5.0, 0.0)}) {
    const cplx w = green_inf(unit, z).phi;
    // w - w0 without cancellation.
    const cplx s = unit.sqrt_h(z), s0 = unit.sqrt_h(cplx(x0, 0.0));
    const cplx dw = (z - x0) * (1.0 + (z + x0) / (s + s0));
    const double ref = std::log(std::abs((w * std::conj(w0) - 1.0) / dw));
    CHECK(pg.g(z) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("domain errors") {
  auto sys = IntervalSystem::make({{-1.0, 1.0}});
  CHECK_THROWS_AS(solve_r_x0(sys, 0.5), DomainError);
  CHECK_THROWS_AS(PoleGreen(sys, 1.0), DomainError);
  PoleGreen pg(sys, 2.0);
  CHECK_THROWS_AS(pg(cplx(2.0, 0.0)), DomainError);
  CHECK_THROWS_AS(harmonic_measure_inf(sys, 1), ValidationError);
}

}  // TEST_SUITE
