#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ivgreen/errors.hpp"
#include "ivgreen/kernels.hpp"

using namespace ivgreen;
namespace k = ivgreen::kernels;

namespace {

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double rel) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    REQUIRE(std::abs(a[i] - b[i]) <= rel * scale + 1e-300);
  }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference is always available") {
  CHECK(k::isa_available(k::Isa::Scalar));
  CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
  const auto before = k::active_isa();
  k::force_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  k::force_isa(before);
}

#if defined(IVGREEN_HAVE_AVX2)
TEST_CASE("AVX2 variants match the scalar reference") {
  if (!k::isa_available(k::Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(21);
  // Odd lengths exercise the scalar tails.
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 257u, 1000u}) {
    auto x = uniform(rng, n, 3.0, 9.0);
    auto pts = uniform(rng, 6, -2.0, 2.5);
    std::vector<double> a(n), b(n);
    k::scalar::inv_sqrt_abs_product(x, pts, a);
    k::avx2::inv_sqrt_abs_product(x, pts, b);
    check_close(a, b, 1e-14);

    auto w = uniform(rng, n, 0.0, 1.0);
    auto u = uniform(rng, n, -1.0, 1.0);
    for (std::size_t moments : {1u, 5u, 16u, 23u}) {
      std::vector<double> ma(moments), mb(moments);
      k::scalar::power_moments(w, u, ma);
      k::avx2::power_moments(w, u, mb);
      for (std::size_t i = 0; i < moments; ++i) {
        double mag = 0.0;
        for (std::size_t j = 0; j < n; ++j) mag += std::abs(w[j] * std::pow(u[j], static_cast<double>(i)));
        REQUIRE(std::abs(ma[i] - mb[i]) <= 1e-14 * mag + 1e-300);
      }
    }

    auto c = uniform(rng, 9, -1.0, 1.0);
    auto xs = uniform(rng, n, -1.2, 1.2);
    k::scalar::horner(c, xs, a);
    k::avx2::horner(c, xs, b);
    for (std::size_t i = 0; i < n; ++i) {
      double mag = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) mag += std::abs(c[j]) * std::pow(std::abs(xs[i]), static_cast<double>(j));
      REQUIRE(std::abs(a[i] - b[i]) <= 1e-14 * mag);
    }

    auto xq = uniform(rng, n, -2.0, 2.0);
    for (int s : {1, 2, 5, 16}) {
      k::scalar::chebyshev_of_quadratic(s, 2.0 / 3.0, -5.0 / 3.0, xq, a);
      k::avx2::chebyshev_of_quadratic(s, 2.0 / 3.0, -5.0 / 3.0, xq, b);
      for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(a[i] - b[i]) <= 1e-12 * std::max(1.0, std::abs(a[i])));
    }
  }
}
#endif

TEST_CASE("kernels compute what they document") {
  std::vector<double> x = {3.0}, pts = {1.0, 2.0, 7.0}, out(1);
  k::inv_sqrt_abs_product(x, pts, out);
  CHECK(out[0] == doctest::Approx(1.0 / std::sqrt(2.0 * 1.0 * 4.0)));

  std::vector<double> w = {1.0, 2.0}, u = {0.5, -1.0}, m(3);
  k::power_moments(w, u, m);
  CHECK(m[0] == doctest::Approx(3.0));
  CHECK(m[1] == doctest::Approx(-1.5));
  CHECK(m[2] == doctest::Approx(2.25));

  std::vector<double> c = {1.0, 0.0, 2.0}, xs = {3.0}, hv(1);
  k::horner(c, xs, hv);
  CHECK(hv[0] == doctest::Approx(19.0));

  std::vector<double> xq = {0.0, 1.0, 1.5, 2.0}, tq(4);
  k::chebyshev_of_quadratic(3, 2.0 / 3.0, -5.0 / 3.0, xq, tq);
  for (std::size_t i = 0; i < xq.size(); ++i) {
    double q = (2.0 * xq[i] * xq[i] - 5.0) / 3.0;
    CHECK(tq[i] == doctest::Approx(4 * q * q * q - 3 * q));
  }
}

}  // TEST_SUITE
