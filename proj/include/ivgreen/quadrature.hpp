#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ivgreen {

using cplx = std::complex<double>;

/// Node-count policy for the quadratures below.
struct QuadratureRule {
  enum class Kind { EndpointSingularCosine, AdaptivePath };
  Kind kind = Kind::EndpointSingularCosine;
  /// Starting node count N; doubled until two successive results agree.
  int order = 64;
  int max_order = 4096;
  double rel_tol = 1e-12;
};

/// Nodes of the N-point Gauss-Chebyshev rule mapped to (alpha, beta):
/// x_k = mid + half * cos((2k-1) pi / 2N).
std::vector<double> chebyshev_nodes(double alpha, double beta, int n);

/// Fills sums[i] = sum_k f_i(x_k) for a family of integrands sharing nodes.
using NodeSums = std::function<void(std::span<const double> nodes, std::span<double> sums)>;
/// Fills values[i * x.size() + k] = f_i(x[k]).
using NodeValues = std::function<void(std::span<const double> x, std::span<double> values)>;

struct SingularBatchResult {
  std::vector<double> values;
  int nodes = 0;
};

/// int_alpha^beta f(x) / sqrt((x-alpha)(beta-x)) dx with a fixed N-point
/// Gauss-Chebyshev rule (exact for polynomials of degree <= 2N-1).
double singular_integral_fixed(const std::function<double(double)>& f, double alpha, double beta, int n);

/// Same integral with N doubled from rule.order until successive results
/// agree to rule.rel_tol (relative to the integral of |f|). Throws
/// NumericalError on a non-finite sample (naming the node) or when
/// rule.max_order is reached without agreement.
double singular_integral(const std::function<double(double)>& f, double alpha, double beta,
                         const QuadratureRule& rule = {});

/// Batched form: `count` integrands evaluated together at each node set.
SingularBatchResult singular_integral_batch(const NodeSums& sums, int count, double alpha, double beta,
                                            const QuadratureRule& rule = {});

/// Principal value int_alpha^beta f(x) / ((x - x0) sqrt((x-alpha)(beta-x))) dx.
/// For alpha < x0 < beta uses f(x) = (f(x) - f(x0)) + f(x0) together with the
/// vanishing principal value of the arcsine kernel; for x0 outside [alpha,
/// beta] it is an ordinary integral. Throws ValidationError for x0 equal to
/// an endpoint.
double pv_singular_integral(const std::function<double(double)>& f, double alpha, double beta, double x0,
                            const QuadratureRule& rule = {});

/// Batched principal values for `count` integrands given pointwise.
SingularBatchResult pv_singular_integral_batch(const NodeValues& values, int count, double alpha, double beta,
                                               double x0, const QuadratureRule& rule = {});

struct PathResult {
  cplx value;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integral along a polyline starting at
/// path[0]. The integrand receives the offset u = xi - path[0] rather than
/// xi itself, so a branch point at path[0] can be handled without
/// cancellation. The first segment is integrated after the substitution
/// u = (p1-p0) t^2, which absorbs an inverse-square-root singularity at p0.
/// Throws NumericalError (with the best estimate and its error bound) if
/// `tol` is not reached within the subdivision budget.
PathResult path_integral(const std::function<cplx(cplx)>& f, std::span<const cplx> path, double tol,
                         int max_subdivisions = 4000);

/// Real adaptive Gauss-Kronrod integral on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_subdivisions = 4000);

/// int_0^len f(u) du for f with a 1/sqrt|u| singularity at 0, via
/// u = len t^2. `len` may be negative (oriented integral).
double integrate_offset(const std::function<double(double)>& f, double len, double tol, int max_subdivisions = 4000);

/// int_x0^{+-inf} f(x) dx for f = O(1/x^2), via x = x0 +- scale (1/t - 1).
double tail_integral(const std::function<double(double)>& f, double x0, int direction, double scale, double tol);

}  // namespace ivgreen
