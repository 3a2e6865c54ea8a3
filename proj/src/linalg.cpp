#include "ivgreen/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ivgreen/errors.hpp"

namespace ivgreen::linalg {

std::vector<double> solve(Matrix m, std::vector<double> rhs, double rel_pivot_tol) {
  const int n = m.n;
  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 && n > 0) throw NumericalError("linear solve: zero matrix");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) <= rel_pivot_tol * scale)
      throw NumericalError("linear solve: singular matrix (pivot " + format_double(m(piv, col)) + " in column " +
                           std::to_string(col) + ")");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c) s -= m(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / m(r, r);
  }
  return x;
}

}  // namespace ivgreen::linalg
