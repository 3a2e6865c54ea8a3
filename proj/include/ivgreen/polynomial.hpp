#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ivgreen {

/// Dense real polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// alpha * x + beta
  static Polynomial affine(double alpha, double beta) { return Polynomial({beta, alpha}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double leading() const { return coeffs_.back(); }
  std::span<const double> coefficients() const { return coeffs_; }
  double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;
  /// Batched evaluation through the dispatched Horner kernel.
  void eval(std::span<const double> x, std::span<double> out) const;

  Polynomial derivative() const;
  /// this(inner(x))
  Polynomial compose(const Polynomial& inner) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  void trim();
  std::vector<double> coeffs_{0.0};
};

/// First-kind Chebyshev polynomial T_n with monomial coefficients.
Polynomial chebyshev_t(int n);

}  // namespace ivgreen
