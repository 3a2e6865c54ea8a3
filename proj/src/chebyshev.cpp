#include "ivgreen/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ivgreen/errors.hpp"
#include "ivgreen/kernels.hpp"

namespace ivgreen {

void ChebAsymSpec::validate() const {
  if (nus.size() != centers.size())
    throw ValidationError("exponent count " + std::to_string(nus.size()) + " does not match center count " +
                          std::to_string(centers.size()));
  long total = 0;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (nus[k] < 1) throw ValidationError("exponent nu_" + std::to_string(k + 1) + " must be >= 1");
    total += nus[k];
    if (!std::isfinite(centers[k])) throw ValidationError("non-finite center");
    if (base.contains(centers[k])) throw ValidationError("center " + format_double(centers[k]) + " lies on E");
    if (k > 0 && !(centers[k - 1] < centers[k])) throw ValidationError("centers must be strictly increasing");
  }
  if (n < 1) throw ValidationError("degree n must be positive");
  if (n <= total)
    throw ValidationError("degree n = " + std::to_string(n) + " must exceed sum of nu_k = " + std::to_string(total));
}

namespace {
ChebAsymSpec validated(ChebAsymSpec s) {
  s.validate();
  return s;
}
}  // namespace

ChebyshevAsymptotics::ChebyshevAsymptotics(ChebAsymSpec spec) : spec_(validated(std::move(spec))), inf_(spec_.base) {
  for (double c : spec_.centers) poles_.push_back(std::make_unique<PoleGreen>(spec_.base, c));
}

cplx ChebyshevAsymptotics::psi(cplx z) const {
  for (double c : spec_.centers)
    if (z == cplx(c, 0.0)) throw DomainError("psi is not evaluated at the center " + format_double(c));
  cplx e = static_cast<double>(spec_.n) * inf_(z).exponent;
  for (std::size_t k = 0; k < poles_.size(); ++k) e -= static_cast<double>(spec_.nus[k]) * (*poles_[k])(z).exponent;
  return std::exp(e);
}

cplx ChebyshevAsymptotics::pn_asym(cplx z) const {
  cplx p = psi(z);
  if (p == cplx(0.0, 0.0) || !std::isfinite(std::abs(p)))
    throw NumericalError("psi_n is not invertible at (" + format_double(z.real()) + ", " + format_double(z.imag()) + ")");
  return 0.5 * (p + 1.0 / p);
}

double ChebyshevAsymptotics::norm_asym() const {
  double log_norm = std::log(2.0) - spec_.n * inf_.robin_constant();
  for (std::size_t k = 0; k < poles_.size(); ++k) log_norm += spec_.nus[k] * inf_.g(cplx(spec_.centers[k], 0.0));
  return std::exp(log_norm);
}

double ChebyshevAsymptotics::norm_asym_dual() const {
  double log_norm = std::log(2.0) - spec_.n * inf_.robin_constant();
  for (std::size_t k = 0; k < poles_.size(); ++k) log_norm += spec_.nus[k] * poles_[k]->g_at_infinity();
  return std::exp(log_norm);
}

double ChebyshevAsymptotics::alternation_estimate(int band) const {
  double v = spec_.n * inf_.harmonic_measure(band);
  for (std::size_t k = 0; k < poles_.size(); ++k) v += spec_.nus[k] * poles_[k]->harmonic_measure(band);
  return v;
}

ComposedChebyshev::ComposedChebyshev(double a, double b, int s) : a_(a), b_(b), s_(s) {
  if (!(std::isfinite(a) && std::isfinite(b) && 0.0 < a && a < b))
    throw ValidationError("composed Chebyshev: need 0 < a < b, got a = " + format_double(a) + ", b = " + format_double(b));
  if (s < 1) throw ValidationError("composed Chebyshev: s must be >= 1");
  const double w = b * b - a * a;
  alpha_ = 2.0 / w;
  beta_ = -(a * a + b * b) / w;
  poly_ = chebyshev_t(s).compose(Polynomial({beta_, 0.0, alpha_}));
  scan();
}

IntervalSystem ComposedChebyshev::system() const { return IntervalSystem::make({{-b_, -a_}, {a_, b_}}); }

double ComposedChebyshev::operator()(double x) const {
  double out = 0.0;
  kernels::chebyshev_of_quadratic(s_, alpha_, beta_, std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

void ComposedChebyshev::eval(std::span<const double> x, std::span<double> out) const {
  kernels::chebyshev_of_quadratic(s_, alpha_, beta_, x, out);
}

void ComposedChebyshev::scan() {
  const int n = kScanPointsPerBand;
  const Interval bands[2] = {{-b_, -a_}, {a_, b_}};
  std::vector<Touchpoint> cand;
  for (int j = 0; j < 2; ++j) {
    const double mid = bands[j].mid(), half = 0.5 * bands[j].length();
    std::vector<double> x(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = mid - half * std::cos(std::numbers::pi * i / (n - 1));
    x.front() = bands[j].lo;
    x.back() = bands[j].hi;
    eval(x, v);
    auto mag = [&](int i) { return std::abs(v[static_cast<std::size_t>(i)]); };
    for (int i = 0; i < n; ++i) {
      bool left_ok = i == 0 || mag(i) >= mag(i - 1);
      bool right_ok = i == n - 1 || mag(i) >= mag(i + 1);
      if (!left_ok || !right_ok) continue;
      // Golden-section maximization of |P| on the neighbouring cell pair.
      double lo = x[static_cast<std::size_t>(std::max(i - 1, 0))];
      double hi = x[static_cast<std::size_t>(std::min(i + 1, n - 1))];
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
      double fc = std::abs((*this)(c)), fd = std::abs((*this)(d));
      for (int it = 0; it < 200 && hi - lo > 1e-14 * bands[j].length(); ++it) {
        if (fc >= fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - gr * (hi - lo);
          fc = std::abs((*this)(c));
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + gr * (hi - lo);
          fd = std::abs((*this)(d));
        }
      }
      double best_x = x[static_cast<std::size_t>(i)], best = (*this)(best_x);
      for (double t : {lo, hi, 0.5 * (lo + hi)}) {
        double pv = (*this)(t);
        if (std::abs(pv) > std::abs(best)) {
          best = pv;
          best_x = t;
        }
      }
      cand.push_back({best_x, best, j});
    }
  }
  sup_ = 0.0;
  for (const auto& t : cand) sup_ = std::max(sup_, std::abs(t.value));
  touch_.clear();
  for (const auto& t : cand) {
    if (std::abs(t.value) < sup_ * (1.0 - kTouchTol)) continue;
    const double len = b_ - a_;
    if (!touch_.empty() && touch_.back().band == t.band && std::abs(touch_.back().x - t.x) < 1e-9 * len) continue;
    touch_.push_back(t);
  }
}

std::vector<Touchpoint> ComposedChebyshev::alternation_sequence() const {
  std::vector<Touchpoint> seq;
  for (const auto& t : touch_) {
    if (!seq.empty() && std::signbit(seq.back().value) == std::signbit(t.value)) continue;
    seq.push_back(t);
  }
  return seq;
}

std::vector<int> ComposedChebyshev::alternation_counts() const {
  std::vector<int> counts(2, 0);
  for (const auto& t : alternation_sequence()) ++counts[static_cast<std::size_t>(t.band)];
  return counts;
}

int ComposedChebyshev::inverse_image_violations(int count, double tol) const {
  if (count < 2) throw ValidationError("inverse-image check needs at least 2 samples");
  const double margin = 0.5 * b_;
  const double lo = -b_ - margin, hi = b_ + margin;
  std::vector<double> x(static_cast<std::size_t>(count)), v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  eval(x, v);
  int bad = 0;
  for (int i = 0; i < count; ++i) {
    const double ax = std::abs(x[static_cast<std::size_t>(i)]);
    const double pv = std::abs(v[static_cast<std::size_t>(i)]);
    const bool in_e = ax >= a_ && ax <= b_;
    if (pv <= 1.0 - tol && !in_e) ++bad;
    if (pv > 1.0 + tol && in_e) ++bad;
  }
  return bad;
}

}  // namespace ivgreen
