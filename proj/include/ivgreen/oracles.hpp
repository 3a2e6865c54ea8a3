#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ivgreen/interval_system.hpp"

// Brute-force reference computations, independent of the period-polynomial
// machinery, used to cross-check it.

namespace ivgreen {

/// Piecewise-constant equilibrium density on graded panels.
struct EquilibriumSolve {
  std::vector<double> breakpoints;  // panel edges, band after band
  std::vector<double> nodes;        // collocation midpoints
  std::vector<double> weights;      // panel masses, >= 0, sum 1
  double robin_constant = 0.0;      // the constant potential V
  double capacity = 0.0;            // exp(-V)
  double residual = 0.0;            // max |U(x_q) - V| over collocation points
};

/// Solves for panel masses making the logarithmic potential constant at the
/// panel midpoints, with total mass 1. Panels are Chebyshev-graded toward
/// the band ends; panel log integrals are exact. Throws ValidationError for
/// nodes_per_band < 16 and NumericalError (suggesting more nodes) when the
/// system is singular or yields negative masses.
EquilibriumSolve equilibrium_capacity(const IntervalSystem& sys, int nodes_per_band = 128);

/// Walk-on-spheres configuration. An empty start means infinity: walkers
/// start uniformly on a circle of radius far_factor * diam about the center,
/// which is the exact hitting distribution of that circle from infinity.
struct WalkConfig {
  std::optional<cplx> start;
  double h_factor = 1e-4;     // absorption width h = h_factor * diam
  long paths = 100000;
  std::uint64_t seed = 1;
  double far_factor = 50.0;
  long max_steps = 100000;    // per walk
};

struct BrownianEstimate {
  std::vector<double> fractions;  // per band
  std::vector<double> stderrs;    // binomial standard errors
  long paths = 0;
  long absorbed = 0;
  double h = 0.0;
};

/// Fractions of walks first absorbed on each band. Walkers leaving the
/// circle of radius far_factor * diam return to it by exact sampling of the
/// exterior Poisson kernel. Path i uses its own generator seeded from
/// (seed, i), so results do not depend on evaluation order. Throws
/// NumericalError carrying the partial estimate when fewer than 99% of the
/// walks are absorbed within max_steps.
BrownianEstimate brownian_hm_all(const IntervalSystem& sys, const WalkConfig& cfg);

struct BandEstimate {
  double estimate;
  double stderr_;
};
BandEstimate brownian_hm(const IntervalSystem& sys, const WalkConfig& cfg, int band);

/// Principal value of int_alpha^beta f(t) / ((t - x0) sqrt((t-alpha)(beta-t))) dt
/// by symmetric excision |t - x0| > eps for each eps in the sequence, then
/// extrapolation to eps = 0 in the odd powers eps, eps^3, ... of the
/// excision error. Throws ValidationError unless x0 is interior and the
/// sequence is positive, strictly decreasing, has at least 3 entries and
/// eps_0 < min(x0 - alpha, beta - x0).
double pv_excision(const std::function<double(double)>& f, double alpha, double beta, double x0,
                   const std::vector<double>& eps_sequence);

/// eps_0 = min(x0 - alpha, beta - x0) / 4, halved `count - 1` times.
std::vector<double> default_excision_sequence(double alpha, double beta, double x0, int count = 6);

}  // namespace ivgreen
