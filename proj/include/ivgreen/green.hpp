#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ivgreen/interval_system.hpp"
#include "ivgreen/polynomial.hpp"
#include "ivgreen/quadrature.hpp"

namespace ivgreen {

/// The period polynomial of a Green's function on E, stored in the scaled
/// variable u = (x - center) / half_width of the system.
///
/// Without a pole this is r_inf: monic of degree l-1 with vanishing gap
/// periods of r_inf / sqrt(H). With a pole x0 it is r_x0 of degree <= l-1,
/// normalised by r_x0(x0) = -sqrt(H(x0)) on the analytic branch so that
/// r_x0 / ((x - x0) sqrt(H)) has residue -1 at x0.
struct PeriodPolynomial {
  Polynomial scaled;
  double center = 0.0;
  double half_width = 1.0;
  std::optional<double> pole;

  double operator()(double x) const { return scaled((x - center) / half_width); }
  cplx operator()(cplx z) const { return scaled((z - center) / half_width); }
  /// Coefficients in powers of x (ascending).
  Polynomial monomial() const;
  int degree() const { return scaled.degree(); }
};

struct GreenEvaluation {
  double g = 0.0;      // Green's function, log|phi|
  cplx phi;            // complex Green's mapping
  cplx exponent;       // log(phi) on the recorded branch
  std::string branch_note;
};

/// Shared machinery for phi(z) = exp(int_{a_2l}^z R(xi) dxi) with
/// R = r / sqrt(H) (pole at infinity) or R = r / ((xi - x0) sqrt(H)).
///
/// Branch convention: for Im z != 0 the straight segment from a_2l to z;
/// for real z left of a_2l the boundary value from the upper half-plane.
class AbelianGreen {
 public:
  const IntervalSystem& system() const { return sys_; }
  const PeriodPolynomial& r() const { return r_; }
  std::optional<double> pole() const { return r_.pole; }

  GreenEvaluation operator()(cplx z) const;
  double g(cplx z) const { return (*this)(z).g; }

  /// Exponent along an explicit polyline starting at a_2l (no real-axis
  /// shortcut). Used for path-independence checks.
  cplx exponent_along(std::span<const cplx> path) const;
  /// Default polyline to z: straight from a_2l, or through a waypoint at
  /// height |z| + 1 when the straight segment would run along E.
  std::vector<cplx> default_path(cplx z) const;

  /// Integrand R at complex or off-E real xi.
  cplx integrand(cplx xi) const;
  double integrand_real(double x) const;
  /// Same at a_idx + u, accurate for small |u|.
  cplx integrand_near(int idx, cplx u) const;
  double integrand_real_near(int idx, double u) const;

  /// (1/pi) int_{E_j} |R(t)| sqrt-boundary density; probabilities over j.
  double harmonic_measure(int band) const;
  std::vector<double> harmonic_measures() const { return measures_; }
  /// The same band integral without the 1/pi normalisation.
  double harmonic_measure_raw(int band) const;

  /// Residuals of the gap conditions (ordinary or principal value),
  /// relative to the size of the summed terms.
  std::vector<double> gap_residuals() const { return residuals_; }

  double path_tolerance() const { return path_tol_; }

 protected:
  AbelianGreen(IntervalSystem sys, PeriodPolynomial r);
  void finish();

  IntervalSystem sys_;
  PeriodPolynomial r_;
  std::vector<double> signed_band_;  // int_{E_k} r / ((t-x0) sqrt|H|) dt
  std::vector<double> measures_;
  std::vector<double> residuals_;
  double path_tol_ = 1e-13;

 private:
  double real_g(double x) const;
  double real_phase(double x) const;
  virtual double g_at_infinity_impl() const = 0;
};

class InfinityGreen : public AbelianGreen {
 public:
  explicit InfinityGreen(IntervalSystem sys);

  /// lim (log|z| - g(z)) as z -> infinity; log cap(E) = -robin.
  double robin_constant() const { return robin_; }
  double capacity() const;

 private:
  double g_at_infinity_impl() const override { return INFINITY; }
  double robin_ = 0.0;
};

class PoleGreen : public AbelianGreen {
 public:
  PoleGreen(IntervalSystem sys, double x0);

  double x0() const { return *r_.pole; }
  /// lim g(z, x0, E) as z -> infinity, i.e. log|phi(inf, x0, E)|.
  double g_at_infinity() const { return g_inf_; }

 private:
  double g_at_infinity_impl() const override { return g_inf_; }
  double g_inf_ = 0.0;
};

PeriodPolynomial solve_r_inf(const IntervalSystem& sys);
PeriodPolynomial solve_r_x0(const IntervalSystem& sys, double x0);

GreenEvaluation green_inf(const IntervalSystem& sys, cplx z);
GreenEvaluation green_pole(const IntervalSystem& sys, double x0, cplx z);
double capacity(const IntervalSystem& sys);
/// 0-based band index.
double harmonic_measure_inf(const IntervalSystem& sys, int band);
double harmonic_measure_at(const IntervalSystem& sys, double x0, int band);

}  // namespace ivgreen
