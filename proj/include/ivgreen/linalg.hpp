#pragma once

#include <vector>

namespace ivgreen::linalg {

/// Row-major dense square matrix.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

/// Gaussian elimination with partial pivoting. Throws NumericalError when a
/// pivot falls below rel_pivot_tol times the largest entry of A.
std::vector<double> solve(Matrix m, std::vector<double> rhs, double rel_pivot_tol = 1e-14);

}  // namespace ivgreen::linalg
