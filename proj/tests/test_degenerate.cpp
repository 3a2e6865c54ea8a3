#include <doctest.h>

#include <cmath>
#include <map>

#include "ivgreen/degenerate.hpp"
#include "ivgreen/errors.hpp"

using namespace ivgreen;

namespace {

std::vector<double> tenth_schedule() {
  std::vector<double> w;
  for (int n = 0; n <= 6; ++n) w.push_back(std::ldexp(0.1, -n));
  return w;
}

const std::vector<cplx> kProbes = {cplx(0.0, 2.0), cplx(-3.0, 1.0), cplx(0.5, 0.5)};

}  // namespace

TEST_SUITE("degenerate") {

TEST_CASE("shrunk systems") {
  auto base = IntervalSystem::make({{-1.0, 1.0}});
  auto fam = ShrinkFamily::make(base, {3.0}, {0.2, 0.1});
  CHECK(shrunk_system(fam, 0) == IntervalSystem::make({{-1.0, 1.0}, {2.9, 3.1}}));
  CHECK(shrunk_system(fam, 1) == IntervalSystem::make({{-1.0, 1.0}, {2.95, 3.05}}));
  auto left = ShrinkFamily::make(base, {3.0}, {0.2}, Placement::AtLeft);
  CHECK(left.shrunk_band(0, 0).lo == 3.0);
  CHECK(left.shrunk_band(0, 0).hi == doctest::Approx(3.2));
  auto right = ShrinkFamily::make(base, {3.0}, {0.2}, Placement::AtRight);
  CHECK(right.shrunk_band(0, 0).hi == 3.0);
  CHECK_THROWS_AS(shrunk_system(fam, 2), ValidationError);

  auto sched = ShrinkFamily::default_schedule(base, {3.0}, 4);
  REQUIRE(sched.size() == 4);
  CHECK(sched[0] == doctest::Approx(0.5));
  CHECK(sched[3] == doctest::Approx(0.0625));
}

TEST_CASE("family validation") {
  auto base = IntervalSystem::make({{-1.0, 1.0}});
  CHECK_THROWS_AS(ShrinkFamily::make(base, {0.5}, {0.1}), ValidationError);
  CHECK_THROWS_AS(ShrinkFamily::make(base, {3.0, 2.0}, {0.1}), ValidationError);
  CHECK_THROWS_AS(ShrinkFamily::make(base, {3.0}, {0.1, 0.2}), ValidationError);
  CHECK_THROWS_AS(ShrinkFamily::make(base, {3.0}, {}), ValidationError);
  CHECK_THROWS_AS(ShrinkFamily::make(base, {3.0}, {-0.1}), ValidationError);
  // Band reaching E or a sibling.
  CHECK_THROWS_AS(ShrinkFamily::make(base, {1.5}, {1.2}), ValidationError);
  CHECK_THROWS_AS(ShrinkFamily::make(base, {3.0, 3.2}, {0.5}), ValidationError);
}

TEST_CASE("without limit points the approximation is exact") {
  auto base = IntervalSystem::make({{0.0, 1.0}, {2.0, 4.0}});
  DegenerateAsymptotics da(ShrinkFamily::make(base, {}, {0.1}));
  InfinityGreen gi(base);
  for (cplx z : kProbes) CHECK(da.phi_asymptotic(0, z).g_approx == doctest::Approx(gi.g(z)).epsilon(1e-14));
  CHECK(da.capacity_asymptotic(0) == doctest::Approx(gi.capacity()).epsilon(1e-14));
  CHECK(da.hm_asymptotic(0, 1) == doctest::Approx(gi.harmonic_measure(1)).epsilon(1e-14));
}

TEST_CASE("small-band measures and first-order quantities") {
  auto base = IntervalSystem::make({{-1.0, 1.0}});
  DegenerateAsymptotics da(ShrinkFamily::make(base, {3.0}, tenth_schedule()));
  double prev = 1.0;
  for (int n = 0; n < da.family().size(); ++n) {
    const auto om = da.small_band_measures(n);
    REQUIRE(om.size() == 1);
    CHECK(om[0] > 0.0);
    CHECK(om[0] < prev);
    prev = om[0];
    // omega ~ 1 / log(1/eps): decays slower than any power, in particular sqrt(eps).
    CHECK(om[0] > std::sqrt(da.family().max_width(n)) * 0.1);
    CHECK(da.capacity_asymptotic(n) > da.base_green().capacity());
    CHECK(da.hm_asymptotic(n, 0) == doctest::Approx(1.0 - om[0]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(da.phi_asymptotic(0, cplx(3.2, 0.0)), ValidationError);
}

TEST_CASE("symmetric two-band base keeps its big bands balanced") {
  auto base = IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}});
  DegenerateAsymptotics da(ShrinkFamily::make(base, {0.0}, tenth_schedule()));
  for (int n : {0, 3, 6}) {
    auto combined = shrunk_system(da.family(), n);
    InfinityGreen gi(combined);
    const auto bi = da.base_indices(combined);
    CHECK(gi.harmonic_measure(bi[0]) == doctest::Approx(gi.harmonic_measure(bi[1])).epsilon(1e-10));
    CHECK(da.hm_asymptotic(n, 0) == doctest::Approx(da.hm_asymptotic(n, 1)).epsilon(1e-12));
  }
}

TEST_CASE("growth rule") {
  const std::vector<double> small(8, 1.0);
  CHECK(ratio_series_bounded({1, 1, 1, 1, 1}, small));
  CHECK(ratio_series_bounded({1, 3, 1, 3, 1}, small));
  CHECK_FALSE(ratio_series_bounded({1, 1, 3, 7}, small));
  // Double doubling outside the last three refinements is tolerated.
  CHECK(ratio_series_bounded({1, 3, 7, 7, 7, 7}, small));
  // Doubling whose error is noise does not count.
  CHECK(ratio_series_bounded({1, 1, 3, 7}, {1, 1, 1e-11, 1e-11}));
  CHECK(ratio_series_bounded({1, 5}, small));
}

TEST_CASE("order checks on the two standard families") {
  struct Config {
    IntervalSystem base;
    double center;
  };
  for (const auto& cfg : {Config{IntervalSystem::make({{-1.0, 1.0}}), 3.0},
                          Config{IntervalSystem::make({{-2.0, -1.0}, {1.0, 2.0}}), 0.0}}) {
    DegenerateAsymptotics da(ShrinkFamily::make(cfg.base, {cfg.center}, tenth_schedule()));
    auto sweep = da.convergence_sweep(kProbes);
    CHECK(sweep.verdict.bounded);
    for (const auto& f : sweep.verdict.failures) MESSAGE(f);
    std::map<std::string, int> rows;
    for (const auto& r : sweep.rows) {
      ++rows[r.quantity];
      CHECK(std::isfinite(r.ratio));
    }
    CHECK(rows["cap"] == 7);
    CHECK(rows["hm"] == 7 * cfg.base.band_count());
    CHECK(sweep.cap_single_reading.size() == 7);
    CHECK(sweep.cap_double_reading.size() == 7);
  }
}

TEST_CASE("mirror image family transports the approximation") {
  auto base = IntervalSystem::make({{-1.0, 1.0}});
  DegenerateAsymptotics right(ShrinkFamily::make(base, {3.0}, {0.1}));
  DegenerateAsymptotics left(ShrinkFamily::make(base, {-3.0}, {0.1}));
  CHECK(right.small_band_measures(0)[0] == doctest::Approx(left.small_band_measures(0)[0]).epsilon(1e-12));
  const cplx z(0.7, 0.9);
  CHECK(right.phi_asymptotic(0, z).g_approx ==
        doctest::Approx(left.phi_asymptotic(0, cplx(-z.real(), z.imag())).g_approx).epsilon(1e-12));
}

TEST_CASE("sweep validation") {
  auto base = IntervalSystem::make({{-1.0, 1.0}});
  DegenerateAsymptotics short_sched(ShrinkFamily::make(base, {3.0}, {0.1, 0.05}));
  CHECK_THROWS_AS(short_sched.convergence_sweep(kProbes), ValidationError);
  DegenerateAsymptotics da(ShrinkFamily::make(base, {3.0}, tenth_schedule()));
  CHECK_THROWS_AS(da.convergence_sweep({cplx(3.1, 0.0)}), ValidationError);
  CHECK_THROWS_AS(da.convergence_sweep({cplx(0.0, 0.0)}), DomainError);
}

}  // TEST_SUITE
