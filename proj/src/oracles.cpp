#include "ivgreen/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ivgreen/errors.hpp"
#include "ivgreen/linalg.hpp"
#include "ivgreen/quadrature.hpp"

namespace ivgreen {

namespace {

constexpr double kPi = std::numbers::pi;

// int_lo^hi log|x - t| dt
double log_panel_integral(double x, double lo, double hi) {
  auto prim = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; };
  return prim(hi - x) - prim(lo - x);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Nearest {
  double dist;
  int band;
};

Nearest nearest_band(const IntervalSystem& sys, cplx z) {
  Nearest best{INFINITY, -1};
  for (int j = 0; j < sys.band_count(); ++j) {
    const auto b = sys.band(j);
    const double x = std::clamp(z.real(), b.lo, b.hi);
    const double d = std::abs(z - cplx(x, 0.0));
    if (d < best.dist) best = {d, j};
  }
  return best;
}

}  // namespace

EquilibriumSolve equilibrium_capacity(const IntervalSystem& sys, int nodes_per_band) {
  if (nodes_per_band < 16)
    throw ValidationError("equilibrium_capacity: nodes_per_band must be >= 16, got " + std::to_string(nodes_per_band));
  EquilibriumSolve out;
  std::vector<double> lo, hi;
  for (const auto& b : sys.bands()) {
    const double mid = b.mid(), half = 0.5 * b.length();
    for (int i = 0; i <= nodes_per_band; ++i) {
      double x = mid - half * std::cos(kPi * i / nodes_per_band);
      if (i == 0) x = b.lo;
      if (i == nodes_per_band) x = b.hi;
      out.breakpoints.push_back(x);
      if (i > 0) {
        lo.push_back(out.breakpoints[out.breakpoints.size() - 2]);
        hi.push_back(x);
      }
    }
  }
  const int p = static_cast<int>(lo.size());
  for (int q = 0; q < p; ++q) out.nodes.push_back(0.5 * (lo[static_cast<std::size_t>(q)] + hi[static_cast<std::size_t>(q)]));

  // Unknowns: panel masses w_0..w_{p-1} and the potential V.
  linalg::Matrix m(p + 1);
  std::vector<double> rhs(static_cast<std::size_t>(p + 1), 0.0);
  for (int q = 0; q < p; ++q) {
    for (int k = 0; k < p; ++k) {
      const double a = lo[static_cast<std::size_t>(k)], b = hi[static_cast<std::size_t>(k)];
      m(q, k) = -log_panel_integral(out.nodes[static_cast<std::size_t>(q)], a, b) / (b - a);
    }
    m(q, p) = -1.0;
  }
  for (int k = 0; k < p; ++k) m(p, k) = 1.0;
  rhs[static_cast<std::size_t>(p)] = 1.0;

  std::vector<double> sol;
  try {
    sol = linalg::solve(m, rhs);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("equilibrium_capacity: singular discretization (") + e.what() +
                         "); try more nodes per band");
  }
  out.weights.assign(sol.begin(), sol.begin() + p);
  out.robin_constant = sol[static_cast<std::size_t>(p)];
  for (double w : out.weights)
    if (w < 0.0)
      throw NumericalError("equilibrium_capacity: negative panel mass " + format_double(w) + "; try more nodes per band");
  for (int q = 0; q < p; ++q) {
    double u = 0.0;
    for (int k = 0; k < p; ++k) u += m(q, k) * out.weights[static_cast<std::size_t>(k)];
    out.residual = std::max(out.residual, std::abs(u - out.robin_constant));
  }
  out.capacity = std::exp(-out.robin_constant);
  return out;
}

BrownianEstimate brownian_hm_all(const IntervalSystem& sys, const WalkConfig& cfg) {
  if (!(cfg.h_factor > 0.0)) throw ValidationError("walk: absorption width must be positive");
  if (cfg.paths < 10000) throw ValidationError("walk: path budget must be >= 10^4, got " + std::to_string(cfg.paths));
  if (!(cfg.far_factor > 1.0)) throw ValidationError("walk: far_factor must exceed 1");
  const double diam = sys.diameter();
  const double h = cfg.h_factor * diam;
  const cplx s(sys.center(), 0.0);
  const double radius = cfg.far_factor * diam;
  if (cfg.start) {
    const cplx z = *cfg.start;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("walk: start must be finite");
    if (nearest_band(sys, z).dist <= h) throw ValidationError("walk: start lies inside the thickened set");
  }

  const int l = sys.band_count();
  std::vector<long> hits(static_cast<std::size_t>(l), 0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (long i = 0; i < cfg.paths; ++i) {
    std::mt19937_64 gen(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(i))));
    cplx z = cfg.start ? *cfg.start : s + std::polar(radius, angle(gen));
    for (long step = 0; step < cfg.max_steps; ++step) {
      const auto nb = nearest_band(sys, z);
      if (nb.dist <= h) {
        ++hits[static_cast<std::size_t>(nb.band)];
        break;
      }
      const cplx w0 = (z - s) / radius;
      if (std::norm(w0) > 1.0) {
        // Exterior Poisson kernel: invert into the disk, then push the
        // uniform law forward by the disk automorphism sending 0 to a.
        const cplx a = 1.0 / std::conj(w0);
        const cplx zeta = std::polar(1.0, angle(gen));
        z = s + radius * (zeta + a) / (1.0 + std::conj(a) * zeta);
        continue;
      }
      z += std::polar(nb.dist, angle(gen));
    }
  }

  BrownianEstimate est;
  est.paths = cfg.paths;
  est.h = h;
  for (long c : hits) est.absorbed += c;
  for (int j = 0; j < l; ++j) {
    const double p = est.absorbed > 0 ? static_cast<double>(hits[static_cast<std::size_t>(j)]) / est.absorbed : 0.0;
    est.fractions.push_back(p);
    est.stderrs.push_back(est.absorbed > 0 ? std::sqrt(p * (1.0 - p) / est.absorbed) : INFINITY);
  }
  const double rate = static_cast<double>(est.absorbed) / static_cast<double>(cfg.paths);
  if (rate < 0.99) {
    const double partial = est.fractions.empty() ? 0.0 : est.fractions[0];
    throw NumericalError("walk: only " + format_double(rate * 100.0) + "% of walks absorbed within " +
                             std::to_string(cfg.max_steps) + " steps (partial estimate for band 0: " +
                             format_double(partial) + ")",
                         partial, est.stderrs.empty() ? INFINITY : est.stderrs[0]);
  }
  return est;
}

BandEstimate brownian_hm(const IntervalSystem& sys, const WalkConfig& cfg, int band) {
  if (band < 0 || band >= sys.band_count()) throw ValidationError("band index " + std::to_string(band) + " out of range");
  auto all = brownian_hm_all(sys, cfg);
  return {all.fractions[static_cast<std::size_t>(band)], all.stderrs[static_cast<std::size_t>(band)]};
}

std::vector<double> default_excision_sequence(double alpha, double beta, double x0, int count) {
  const double eps0 = 0.25 * std::min(x0 - alpha, beta - x0);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(std::ldexp(eps0, -i));
  return out;
}

double pv_excision(const std::function<double(double)>& f, double alpha, double beta, double x0,
                   const std::vector<double>& eps) {
  if (!(alpha < x0 && x0 < beta)) throw ValidationError("pv_excision: x0 must lie inside (alpha, beta)");
  if (eps.size() < 3) throw ValidationError("pv_excision: need at least 3 excision widths");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw ValidationError("pv_excision: excision widths must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ValidationError("pv_excision: excision widths must strictly decrease");
  }
  if (!(eps[0] < std::min(x0 - alpha, beta - x0)))
    throw ValidationError("pv_excision: first excision width reaches an endpoint");

  // t = mid - half cos(theta) absorbs the endpoint weight.
  const double mid = 0.5 * (alpha + beta), half = 0.5 * (beta - alpha);
  auto g = [&](double th) {
    const double t = mid - half * std::cos(th);
    return f(t) / (t - x0);
  };
  auto theta = [&](double t) { return std::acos(std::clamp((mid - t) / half, -1.0, 1.0)); };
  double fmax = 1.0;
  for (int i = 0; i <= 64; ++i) fmax = std::max(fmax, std::abs(f(mid - half * std::cos(kPi * i / 64))));
  const double tol = 1e-13 * fmax;
  std::vector<double> vals;
  for (double e : eps) {
    const double t1 = theta(x0 - e), t2 = theta(x0 + e);
    vals.push_back(integrate(g, 0.0, t1, tol) + integrate(g, t2, kPi, tol));
  }

  // I(eps) = PV + c_1 eps + c_2 eps^3 + ...; fit the last k+1 values.
  const int k = static_cast<int>(std::min<std::size_t>(eps.size(), 5)) - 1;
  const std::size_t first = eps.size() - static_cast<std::size_t>(k) - 1;
  const double scale = eps[first];
  linalg::Matrix m(k + 1);
  std::vector<double> rhs;
  for (int r = 0; r <= k; ++r) {
    const double e = eps[first + static_cast<std::size_t>(r)] / scale;
    m(r, 0) = 1.0;
    for (int c = 1; c <= k; ++c) m(r, c) = std::pow(e, 2 * c - 1);
    rhs.push_back(vals[first + static_cast<std::size_t>(r)]);
  }
  return linalg::solve(m, rhs, 1e-16)[0];
}

}  // namespace ivgreen
