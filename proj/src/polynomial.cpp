#include "ivgreen/polynomial.hpp"

#include <algorithm>

#include "ivgreen/kernels.hpp"

namespace ivgreen {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void Polynomial::eval(std::span<const double> x, std::span<double> out) const { kernels::horner(coeffs_, x, out); }

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial acc({0.0});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + Polynomial({*it});
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial chebyshev_t(int n) {
  Polynomial t0({1.0});
  if (n == 0) return t0;
  Polynomial t1({0.0, 1.0});
  const Polynomial two_x({0.0, 2.0});
  for (int k = 1; k < n; ++k) {
    Polynomial t2 = two_x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

}  // namespace ivgreen
