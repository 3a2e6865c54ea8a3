#include <doctest.h>

#include <cmath>
#include <random>

#include "ivgreen/chebyshev.hpp"
#include "ivgreen/errors.hpp"
#include "support.hpp"

using namespace ivgreen;
using ivgreen::testing::rel_err;

namespace {

cplx chebyshev_t_complex(int n, cplx z) {
  cplx t0 = 1.0, t1 = z;
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    cplx t2 = 2.0 * z * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

}  // namespace

TEST_SUITE("chebyshev") {

TEST_CASE("m = 0 reproduces Chebyshev polynomials") {
  auto unit = IntervalSystem::make({{-1.0, 1.0}});
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(-1.5, 1.5);
  for (int n : {1, 3, 6}) {
    ChebyshevAsymptotics ca({unit, {}, {}, n});
    for (int i = 0; i < 100; ++i) {
      cplx z(re(rng), im(rng));
      if (std::abs(z.imag()) < 1e-3 && std::abs(z.real()) <= 1.0) continue;
      CHECK(rel_err(ca.pn_asym(z), chebyshev_t_complex(n, z)) <= 1e-10);
    }
  }
  for (int n = 1; n <= 8; ++n) {
    ChebyshevAsymptotics wide({IntervalSystem::make({{-2.0, 2.0}}), {}, {}, n});
    CHECK(wide.norm_asym() == doctest::Approx(2.0).epsilon(1e-8));
  }
  ChebyshevAsymptotics small({unit, {}, {}, 5});
  CHECK(small.norm_asym() == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
}

TEST_CASE("psi near the limit points and near E") {
  auto unit = IntervalSystem::make({{-1.0, 1.0}});
  ChebyshevAsymptotics ca({unit, {3.0}, {1}, 4});
  CHECK(std::abs(ca.psi(cplx(3.0, 1e-6))) < 1e-4);
  CHECK(std::abs(ca.psi(cplx(3.0 + 1e-4, 0.0))) < 1e-2);
  CHECK(std::abs(ca.psi(cplx(0.3, 1e-9))) == doctest::Approx(1.0).epsilon(1e-6));
  // Real on the real axis off E.
  CHECK(std::abs(ca.pn_asym(cplx(2.0, 0.0)).imag()) < 1e-12);
  CHECK(ca.norm_asym() == doctest::Approx(ca.norm_asym_dual()).epsilon(1e-10));
  // The estimate counts n omega(inf, E) + nu omega(3, E) = 4 + 1.
  CHECK(ca.alternation_estimate(0) == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("spec validation") {
  auto unit = IntervalSystem::make({{-1.0, 1.0}});
  CHECK_THROWS_AS(ChebyshevAsymptotics({unit, {3.0}, {0}, 4}), ValidationError);
  CHECK_THROWS_AS(ChebyshevAsymptotics({unit, {3.0}, {4}, 4}), ValidationError);
  CHECK_THROWS_AS(ChebyshevAsymptotics({unit, {0.5}, {1}, 4}), ValidationError);
  CHECK_THROWS_AS(ChebyshevAsymptotics({unit, {3.0, 2.0}, {1, 1}, 4}), ValidationError);
  CHECK_THROWS_AS(ChebyshevAsymptotics({unit, {3.0}, {1, 1}, 4}), ValidationError);
  CHECK_THROWS_AS(ChebyshevAsymptotics({unit, {}, {}, 0}), ValidationError);
}

TEST_CASE("composed family basics") {
  ComposedChebyshev p1(1.0, 2.0, 1);
  CHECK(p1.leading_coefficient() == doctest::Approx(2.0 / 3.0));
  for (double x : {-2.0, -1.3, 0.0, 1.5, 2.0}) CHECK(p1(x) == doctest::Approx((2.0 * x * x - 5.0) / 3.0));
  CHECK(p1.sup_norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p1.monic_norm() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(p1.system() == IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}}));
  CHECK_THROWS_AS(ComposedChebyshev(2.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(ComposedChebyshev(1.0, 2.0, 0), ValidationError);
}

TEST_CASE("composed family against the asymptotic norm") {
  double prev = INFINITY;
  for (int s : {1, 2, 4, 8, 16}) {
    ComposedChebyshev p(1.0, 2.0, s);
    // Exact: monic norm is 2 cap^n with cap = sqrt(3)/2.
    CHECK(rel_err(p.monic_norm(), 2.0 * std::pow(std::sqrt(3.0) / 2.0, 2 * s)) <= 1e-12 * s);
    ChebyshevAsymptotics ca({p.system(), {}, {}, 2 * s});
    const double err = rel_err(p.monic_norm(), ca.norm_asym());
    CHECK(err <= 1e-10);
    prev = err;
    const auto counts = p.alternation_counts();
    REQUIRE(counts.size() == 2);
    CHECK(counts[0] + counts[1] == 2 * s + 1);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(counts[static_cast<std::size_t>(j)] - ca.alternation_estimate(j)) <= 2.0);
    CHECK(p.inverse_image_violations(10000) == 0);
  }
  (void)prev;
}

TEST_CASE("alternation sequence alternates") {
  ComposedChebyshev p(0.5, 3.0, 5);
  const auto seq = p.alternation_sequence();
  REQUIRE(seq.size() >= 2);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    CHECK(seq[i].x > seq[i - 1].x);
    CHECK(seq[i].value * seq[i - 1].value < 0.0);
  }
  CHECK(seq.size() == 11);
}

TEST_CASE("m = 1 exact family: a band carrying measure 1/n") {
  // F = [-1, 1] u [3 - w/2, 3 + w/2] with omega(inf, I, F) = 1/n is the
  // inverse image of a degree-n polynomial, whose monic norm is 2 cap(F)^n.
  auto base = IntervalSystem::make({{-1.0, 1.0}});
  double prev = INFINITY;
  for (int n : {2, 3, 4, 6}) {
    auto measure = [&](double w) {
      return harmonic_measure_inf(IntervalSystem::make({{-1.0, 1.0}, {3.0 - 0.5 * w, 3.0 + 0.5 * w}}), 1);
    };
    double lo = 1e-12, hi = 3.9;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (measure(mid) < 1.0 / n ? lo : hi) = mid;
    }
    const double w = 0.5 * (lo + hi);
    CHECK(std::abs(measure(w) - 1.0 / n) < 1e-10);
    const double exact = 2.0 * std::pow(capacity(IntervalSystem::make({{-1.0, 1.0}, {3.0 - 0.5 * w, 3.0 + 0.5 * w}})), n);
    ChebyshevAsymptotics ca({base, {3.0}, {1}, n});
    const double err = rel_err(ca.norm_asym(), exact);
    MESSAGE("n=" << n << " width=" << w << " rel.err=" << err);
    CHECK(err < prev);
    prev = err;
  }
}

}  // TEST_SUITE
