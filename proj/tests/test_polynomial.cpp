#include <doctest.h>

#include <cmath>
#include <random>

#include "ivgreen/errors.hpp"
#include "ivgreen/linalg.hpp"
#include "ivgreen/polynomial.hpp"

using namespace ivgreen;

TEST_SUITE("polynomial") {

TEST_CASE("arithmetic and evaluation") {
  Polynomial p({1.0, -2.0, 3.0});  // 3x^2 - 2x + 1
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == doctest::Approx(9.0));
  CHECK(p.derivative()(2.0) == doctest::Approx(10.0));
  auto q = Polynomial::affine(2.0, -1.0);
  CHECK((p * q).degree() == 3);
  CHECK((p * q)(1.5) == doctest::Approx(p(1.5) * q(1.5)));
  CHECK((p - p).degree() == 0);
  CHECK((p + q)(0.3) == doctest::Approx(p(0.3) + q(0.3)));
  CHECK(p.compose(q)(0.7) == doctest::Approx(p(q(0.7))));
  std::complex<double> z(0.3, -1.2);
  CHECK(std::abs(p(z) - (3.0 * z * z - 2.0 * z + 1.0)) < 1e-14);

  std::vector<double> xs = {-1.0, 0.0, 0.5, 2.0, 3.5};
  std::vector<double> out(xs.size());
  p.eval(xs, out);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(out[i] == doctest::Approx(p(xs[i])));
}

TEST_CASE("Chebyshev polynomials") {
  for (int n = 0; n <= 12; ++n) {
    auto t = chebyshev_t(n);
    CHECK(t.degree() == n);
    for (double x : {-0.9, -0.2, 0.4, 1.0}) CHECK(t(x) == doctest::Approx(std::cos(n * std::acos(x))).epsilon(1e-12));
    if (n > 0) CHECK(t.leading() == doctest::Approx(std::ldexp(1.0, n - 1)));
  }
}

TEST_CASE("dense solve") {
  linalg::Matrix m(3);
  double a[3][3] = {{2, 1, -1}, {-3, -1, 2}, {-2, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a[i][j];
  auto x = linalg::solve(m, {8, -11, -3});
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(3.0));
  CHECK(x[2] == doctest::Approx(-1.0));

  linalg::Matrix s(2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  CHECK_THROWS_AS(linalg::solve(s, {1, 2}), NumericalError);
}

}  // TEST_SUITE
