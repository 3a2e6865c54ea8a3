#include "ivgreen/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ivgreen/errors.hpp"
#include "ivgreen/kernels.hpp"
#include "ivgreen/linalg.hpp"

namespace ivgreen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealTol = 1e-13;

std::vector<double> endpoints_except(const IntervalSystem& sys, int skip_a, int skip_b) {
  std::vector<double> out;
  for (int i = 0; i < 2 * sys.band_count(); ++i)
    if (i != skip_a && i != skip_b) out.push_back(sys.endpoint(i));
  return out;
}

double half_width(const IntervalSystem& sys) { return 0.5 * sys.diameter(); }

// Gap integrals int_gap u^i dxi / sqrt|H|, i < count.
std::vector<double> gap_moments(const IntervalSystem& sys, int gap, int count) {
  const auto g = sys.gap(gap);
  const auto others = endpoints_except(sys, 2 * gap + 1, 2 * gap + 2);
  const double c = sys.center(), h = half_width(sys);
  auto sums = [&](std::span<const double> x, std::span<double> out) {
    std::vector<double> w(x.size()), u(x.size());
    kernels::inv_sqrt_abs_product(x, others, w);
    for (std::size_t k = 0; k < x.size(); ++k) u[k] = (x[k] - c) / h;
    kernels::power_moments(w, u, out);
  };
  return singular_integral_batch(sums, count, g.lo, g.hi).values;
}

// Principal-value gap integrals PV int_gap u^i dxi / ((xi - x0) sqrt|H|).
std::vector<double> gap_pv_moments(const IntervalSystem& sys, int gap, int count, double x0) {
  const auto g = sys.gap(gap);
  const auto others = endpoints_except(sys, 2 * gap + 1, 2 * gap + 2);
  const double c = sys.center(), h = half_width(sys);
  auto values = [&](std::span<const double> x, std::span<double> out) {
    const std::size_t n = x.size();
    std::vector<double> w(n);
    kernels::inv_sqrt_abs_product(x, others, w);
    for (std::size_t k = 0; k < n; ++k) {
      double u = (x[k] - c) / h, p = w[k];
      for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i) * n + k] = p;
        p *= u;
      }
    }
  };
  return pv_singular_integral_batch(values, count, g.lo, g.hi, x0).values;
}

}  // namespace

Polynomial PeriodPolynomial::monomial() const {
  return scaled.compose(Polynomial::affine(1.0 / half_width, -center / half_width));
}

PeriodPolynomial solve_r_inf(const IntervalSystem& sys) {
  const int l = sys.band_count();
  const double h = half_width(sys);
  PeriodPolynomial r{Polynomial::constant(1.0), sys.center(), h, std::nullopt};
  if (l == 1) return r;
  const int free = l - 1;
  linalg::Matrix m(free);
  std::vector<double> rhs(static_cast<std::size_t>(free));
  for (int j = 0; j < free; ++j) {
    auto mom = gap_moments(sys, j, l);
    for (int i = 0; i < free; ++i) m(j, i) = mom[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(j)] = -mom[static_cast<std::size_t>(free)];
  }
  auto b = linalg::solve(m, rhs);
  // Monic in x means leading coefficient h^(l-1) in u.
  const double lead = std::pow(h, free);
  std::vector<double> coeffs(static_cast<std::size_t>(l));
  for (int i = 0; i < free; ++i) coeffs[static_cast<std::size_t>(i)] = lead * b[static_cast<std::size_t>(i)];
  coeffs[static_cast<std::size_t>(free)] = lead;
  r.scaled = Polynomial(std::move(coeffs));
  return r;
}

PeriodPolynomial solve_r_x0(const IntervalSystem& sys, double x0) {
  if (!std::isfinite(x0)) throw ValidationError("pole must be finite");
  if (sys.contains(x0)) throw DomainError("pole x0 = " + format_double(x0) + " lies on E");
  const int l = sys.band_count();
  const double c = sys.center(), h = half_width(sys);
  linalg::Matrix m(l);
  std::vector<double> rhs(static_cast<std::size_t>(l), 0.0);
  const double u0 = (x0 - c) / h;
  double p = 1.0;
  for (int i = 0; i < l; ++i) {
    m(0, i) = p;
    p *= u0;
  }
  rhs[0] = -sys.sqrt_h_real(x0);
  for (int j = 0; j + 1 < l; ++j) {
    auto mom = gap_pv_moments(sys, j, l, x0);
    for (int i = 0; i < l; ++i) m(j + 1, i) = mom[static_cast<std::size_t>(i)];
  }
  // Balance the interpolation row against the gap rows.
  double row0 = 0.0, rest = 0.0;
  for (int i = 0; i < l; ++i) row0 = std::max(row0, std::abs(m(0, i)));
  for (int j = 1; j < l; ++j)
    for (int i = 0; i < l; ++i) rest = std::max(rest, std::abs(m(j, i)));
  if (l > 1 && row0 > 0 && rest > 0) {
    double s = rest / row0;
    for (int i = 0; i < l; ++i) m(0, i) *= s;
    rhs[0] *= s;
  }
  auto coeffs = linalg::solve(m, rhs);
  return {Polynomial(std::move(coeffs)), c, h, x0};
}

AbelianGreen::AbelianGreen(IntervalSystem sys, PeriodPolynomial r) : sys_(std::move(sys)), r_(std::move(r)) {}

void AbelianGreen::finish() {
  const int l = sys_.band_count();
  const double x0 = r_.pole.value_or(0.0);
  const bool has_pole = r_.pole.has_value();
  signed_band_.assign(static_cast<std::size_t>(l), 0.0);
  measures_.assign(static_cast<std::size_t>(l), 0.0);
  std::vector<double> raw(static_cast<std::size_t>(l));
  for (int k = 0; k < l; ++k) {
    const auto b = sys_.band(k);
    const auto others = endpoints_except(sys_, 2 * k, 2 * k + 1);
    auto sums = [&](std::span<const double> x, std::span<double> out) {
      const std::size_t n = x.size();
      std::vector<double> w(n), u(n), rv(n);
      kernels::inv_sqrt_abs_product(x, others, w);
      for (std::size_t i = 0; i < n; ++i) u[i] = (x[i] - r_.center) / r_.half_width;
      r_.scaled.eval(u, rv);
      double s = 0.0, a = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double v = rv[i] * w[i];
        if (has_pole) v /= (x[i] - x0);
        s += v;
        a += std::abs(v);
      }
      out[0] = s;
      out[1] = a;
    };
    auto res = singular_integral_batch(sums, 2, b.lo, b.hi).values;
    signed_band_[static_cast<std::size_t>(k)] = res[0];
    raw[static_cast<std::size_t>(k)] = res[1];
  }
  for (int k = 0; k < l; ++k) measures_[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)] / kPi;

  residuals_.clear();
  for (int j = 0; j + 1 < l; ++j) {
    std::vector<double> mom = has_pole ? gap_pv_moments(sys_, j, l, x0) : gap_moments(sys_, j, l);
    double s = 0.0, a = 0.0;
    for (int i = 0; i <= r_.scaled.degree(); ++i) {
      double t = r_.scaled[i] * mom[static_cast<std::size_t>(i)];
      s += t;
      a += std::abs(t);
    }
    residuals_.push_back(a > 0 ? std::abs(s) / a : std::abs(s));
  }
}

double AbelianGreen::harmonic_measure(int band) const {
  if (band < 0 || band >= sys_.band_count())
    throw ValidationError("band index " + std::to_string(band) + " out of range");
  return measures_[static_cast<std::size_t>(band)];
}

double AbelianGreen::harmonic_measure_raw(int band) const { return harmonic_measure(band) * kPi; }

cplx AbelianGreen::integrand(cplx xi) const {
  cplx v = r_(xi) / sys_.sqrt_h(xi);
  if (r_.pole) v /= (xi - *r_.pole);
  return v;
}

cplx AbelianGreen::integrand_near(int idx, cplx u) const {
  const cplx xi = sys_.endpoint(idx) + u;
  cplx v = r_(xi) / sys_.sqrt_h_near(idx, u);
  if (r_.pole) v /= (xi - *r_.pole);
  return v;
}

double AbelianGreen::integrand_real_near(int idx, double u) const {
  const double x = sys_.endpoint(idx) + u;
  double v = r_(x) / sys_.sqrt_h_real_near(idx, u);
  if (r_.pole) v /= (x - *r_.pole);
  return v;
}

double AbelianGreen::integrand_real(double x) const {
  double v = r_(x) / sys_.sqrt_h_real(x);
  if (r_.pole) v /= (x - *r_.pole);
  return v;
}

double AbelianGreen::real_g(double x) const {
  const double diam = sys_.diameter();
  const int last = 2 * sys_.band_count() - 1;
  auto f = [this](double t) { return integrand_real(t); };
  auto from = [&](int idx) {
    return integrate_offset([&](double u) { return integrand_real_near(idx, u); }, x - sys_.endpoint(idx), kRealTol);
  };
  const auto pole = r_.pole;
  auto between = [&](double lo, double hi) { return pole && *pole > lo && *pole < hi; };
  if (x > sys_.right()) {
    if (pole && *pole > sys_.right() && *pole < x)
      return g_at_infinity_impl() - tail_integral(f, x, +1, diam, kRealTol);
    return from(last);
  }
  if (x < sys_.left()) {
    if (pole && *pole < sys_.left() && *pole > x)
      return g_at_infinity_impl() - tail_integral(f, x, -1, diam, kRealTol);
    return from(0);
  }
  const int j = *sys_.gap_of(x);
  const auto gp = sys_.gap(j);
  bool lo_ok = !between(gp.lo, x), hi_ok = !between(x, gp.hi);
  bool use_lo = lo_ok && (!hi_ok || x - gp.lo <= gp.hi - x);
  return from(use_lo ? 2 * j + 1 : 2 * j + 2);
}

double AbelianGreen::real_phase(double x) const {
  const int l = sys_.band_count();
  double theta = 0.0;
  for (int k = 0; k < l; ++k) {
    if (sys_.band(k).lo <= x) continue;
    double sign = ((l - 1 - k) % 2 == 0) ? 1.0 : -1.0;
    theta += sign * signed_band_[static_cast<std::size_t>(k)];
  }
  if (r_.pole) {
    const double x0 = *r_.pole;
    // Passing over the residue -1 pole in the upper half-plane.
    if (x0 < sys_.right() && x < x0) theta -= kPi;
    if (x0 > sys_.right() && x > x0) theta += kPi;
  }
  return theta;
}

std::vector<cplx> AbelianGreen::default_path(cplx z) const {
  const cplx a(sys_.right(), 0.0);
  // Go over the top when the straight segment grazes a branch point or the
  // pole (this includes real z left of a_2l, where it would run along E).
  auto grazes = [&](double p) {
    const cplx d = z - a;
    double t = std::clamp(((cplx(p, 0.0) - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
    double dist = std::abs(a + t * d - p);
    return dist < 0.1 * std::min(std::abs(z - p), std::abs(a - p));
  };
  bool over = false;
  for (int i = 0; i + 1 < 2 * sys_.band_count(); ++i) over = over || grazes(sys_.endpoint(i));
  if (r_.pole) over = over || grazes(*r_.pole);
  if (!over) return {a, z};
  double height = std::abs(z) + 1.0;
  cplx w(0.5 * (a.real() + z.real()), z.imag() < 0.0 ? -height : height);
  return {a, w, z};
}

cplx AbelianGreen::exponent_along(std::span<const cplx> path) const {
  if (path.empty()) throw ValidationError("empty path");
  const cplx start = path[0];
  int idx = -1;
  if (start.imag() == 0.0)
    for (int i = 0; i < 2 * sys_.band_count(); ++i)
      if (sys_.endpoint(i) == start.real()) idx = i;
  if (!r_.pole) {
    if (idx >= 0) return path_integral([&](cplx u) { return integrand_near(idx, u); }, path, path_tol_).value;
    return path_integral([&](cplx u) { return integrand(start + u); }, path, path_tol_).value;
  }
  // Residue -1 at x0: integrate R + 1/(xi - x0) and add the log analytically,
  // segment by segment so the branch of the log follows the path.
  const cplx x0(*r_.pole, 0.0);
  auto smooth = [&](cplx u) {
    const cplx base = idx >= 0 ? integrand_near(idx, u) : integrand(start + u);
    return base + 1.0 / (start + u - x0);
  };
  cplx logs = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i] == x0 || path[i - 1] == x0) throw DomainError("path passes through the pole");
    logs += std::log((path[i] - x0) / (path[i - 1] - x0));
  }
  return path_integral(smooth, path, path_tol_).value - logs;
}

GreenEvaluation AbelianGreen::operator()(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("query point must be finite");
  if (sys_.contains(z))
    throw DomainError("query point " + format_double(z.real()) + " lies on E");
  if (r_.pole && z == cplx(*r_.pole, 0.0))
    throw DomainError("query point coincides with the pole " + format_double(*r_.pole));
  GreenEvaluation out;
  if (z.imag() == 0.0) {
    const double x = z.real();
    out.exponent = cplx(real_g(x), real_phase(x));
    out.branch_note = "real axis: boundary value from the upper half-plane, anchored at a_2l";
  } else {
    auto path = default_path(z);
    out.exponent = exponent_along(path);
    out.branch_note = path.size() == 2 ? "straight segment from a_2l" : "from a_2l via waypoint at height |z|+1";
  }
  out.g = out.exponent.real();
  out.phi = std::exp(out.exponent);
  return out;
}

InfinityGreen::InfinityGreen(IntervalSystem sys) : AbelianGreen(sys, solve_r_inf(sys)) {
  finish();
  // log cap = log(X - s) - int_{a_2l}^X R - int_X^inf (R - 1/(xi - s)).
  const double s = sys_.center(), diam = sys_.diameter();
  const double x_split = sys_.right() + diam;
  const int last = 2 * sys_.band_count() - 1;
  double near = integrate_offset([this, last](double u) { return integrand_real_near(last, u); }, diam, kRealTol);
  double tail = tail_integral([&](double t) { return integrand_real(t) - 1.0 / (t - s); }, x_split, +1, diam, kRealTol);
  robin_ = -(std::log(x_split - s) - near - tail);
}

double InfinityGreen::capacity() const { return std::exp(-robin_); }

PoleGreen::PoleGreen(IntervalSystem sys, double x0) : AbelianGreen(sys, solve_r_x0(sys, x0)) {
  finish();
  const double diam = sys_.diameter();
  auto f = [this](double t) { return integrand_real(t); };
  if (x0 < sys_.right()) {
    double split = sys_.right() + diam;
    const int last = 2 * sys_.band_count() - 1;
    g_inf_ = integrate_offset([&](double u) { return integrand_real_near(last, u); }, diam, kRealTol) +
             tail_integral(f, split, +1, diam, kRealTol);
  } else {
    double split = sys_.left() - diam;
    g_inf_ = integrate_offset([&](double u) { return integrand_real_near(0, u); }, -diam, kRealTol) +
             tail_integral(f, split, -1, diam, kRealTol);
  }
}

GreenEvaluation green_inf(const IntervalSystem& sys, cplx z) { return InfinityGreen(sys)(z); }

GreenEvaluation green_pole(const IntervalSystem& sys, double x0, cplx z) { return PoleGreen(sys, x0)(z); }

double capacity(const IntervalSystem& sys) { return InfinityGreen(sys).capacity(); }

double harmonic_measure_inf(const IntervalSystem& sys, int band) { return InfinityGreen(sys).harmonic_measure(band); }

double harmonic_measure_at(const IntervalSystem& sys, double x0, int band) {
  return PoleGreen(sys, x0).harmonic_measure(band);
}

}  // namespace ivgreen
