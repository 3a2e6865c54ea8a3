#pragma once

#include <memory>
#include <vector>

#include "ivgreen/green.hpp"
#include "ivgreen/interval_system.hpp"
#include "ivgreen/polynomial.hpp"

namespace ivgreen {

/// Base set E, limit points c_k with alternation multiplicities nu_k, and
/// the polynomial degree n.
struct ChebAsymSpec {
  IntervalSystem base;
  std::vector<double> centers;
  std::vector<int> nus;
  int n = 1;

  /// nu_k >= 1, n > sum nu_k, centers sorted and off E.
  void validate() const;
};

/// psi_n and the quantities derived from it, with the Green's functions of
/// E solved once.
class ChebyshevAsymptotics {
 public:
  explicit ChebyshevAsymptotics(ChebAsymSpec spec);

  const ChebAsymSpec& spec() const { return spec_; }

  /// phi(z, inf, E)^n / prod_k phi(z, c_k, E)^nu_k
  cplx psi(cplx z) const;
  /// (psi + 1/psi) / 2
  cplx pn_asym(cplx z) const;
  /// 2 cap(E)^n prod_k exp(nu_k g(c_k, inf, E))
  double norm_asym() const;
  /// Same with the factors read as exp(nu_k g(inf, c_k, E)); equal up to
  /// quadrature error by symmetry of the Green's function.
  double norm_asym_dual() const;
  /// n omega(inf, E_j, E) + sum_k nu_k omega(c_k, E_j, E)
  double alternation_estimate(int band) const;

 private:
  ChebAsymSpec spec_;
  InfinityGreen inf_;
  std::vector<std::unique_ptr<PoleGreen>> poles_;
};

/// One touchpoint of |P| = ||P|| found by the alternation scan.
struct Touchpoint {
  double x;
  double value;
  int band;
};

/// P(x) = T_s(q(x)), q(x) = (2x^2 - (a^2+b^2)) / (b^2 - a^2), whose inverse
/// image of [-1, 1] is [-b, -a] u [a, b].
class ComposedChebyshev {
 public:
  ComposedChebyshev(double a, double b, int s);

  double a() const { return a_; }
  double b() const { return b_; }
  int s() const { return s_; }
  int degree() const { return 2 * s_; }
  IntervalSystem system() const;

  /// Monomial coefficients (exact composition; not used for evaluation).
  const Polynomial& polynomial() const { return poly_; }
  double leading_coefficient() const { return poly_.leading(); }

  /// Stable evaluation through the three-term recurrence in q.
  double operator()(double x) const;
  void eval(std::span<const double> x, std::span<double> out) const;

  /// max |P| over [-b,-a] u [a,b] by a Chebyshev-spaced scan with local
  /// refinement.
  double sup_norm() const { return sup_; }
  /// sup_norm / |lc|: the norm of the monic rescaling.
  double monic_norm() const { return sup_ / std::abs(poly_.leading()); }

  /// Points with |P| = ||P|| (relative tolerance touch_tol), left to right.
  const std::vector<Touchpoint>& touchpoints() const { return touch_; }
  /// Maximal alternating subsequence: equal-sign neighbours collapse to the
  /// leftmost one.
  std::vector<Touchpoint> alternation_sequence() const;
  /// Points of the alternation sequence lying in each band.
  std::vector<int> alternation_counts() const;

  /// Samples `count` points on [-b - margin, b + margin] and returns how many
  /// violate "|P(x)| <= 1 iff x in E" beyond `tol`.
  int inverse_image_violations(int count, double tol = 1e-9) const;

  static constexpr int kScanPointsPerBand = 2048;
  static constexpr double kTouchTol = 1e-8;

 private:
  void scan();
  double a_, b_;
  int s_;
  double alpha_, beta_;
  Polynomial poly_;
  double sup_ = 0.0;
  std::vector<Touchpoint> touch_;
};

}  // namespace ivgreen
