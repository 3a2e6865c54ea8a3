#include <cmath>

#include "ivgreen/kernels.hpp"

namespace ivgreen::kernels::scalar {

void inv_sqrt_abs_product(std::span<const double> x, std::span<const double> pts, std::span<double> out) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    double p = 1.0;
    for (double a : pts) p *= std::abs(x[k] - a);
    out[k] = 1.0 / std::sqrt(p);
  }
}

void power_moments(std::span<const double> w, std::span<const double> u, std::span<double> out) {
  for (double& o : out) o = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    double term = w[k];
    for (double& o : out) {
      o += term;
      term *= u[k];
    }
  }
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x[k] + coeffs[i];
    out[k] = acc;
  }
}

void chebyshev_of_quadratic(int s, double alpha, double beta, std::span<const double> x, std::span<double> out) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    double y = alpha * x[k] * x[k] + beta;
    double t0 = 1.0, t1 = y;
    if (s == 0) {
      out[k] = 1.0;
      continue;
    }
    for (int i = 1; i < s; ++i) {
      double t2 = 2.0 * y * t1 - t0;
      t0 = t1;
      t1 = t2;
    }
    out[k] = t1;
  }
}

}  // namespace ivgreen::kernels::scalar
