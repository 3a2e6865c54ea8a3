#include "ivgreen/degenerate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ivgreen/errors.hpp"

namespace ivgreen {

ShrinkFamily ShrinkFamily::make(IntervalSystem base, std::vector<double> centers, std::vector<double> widths,
                                Placement placement) {
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (!std::isfinite(centers[k])) throw ValidationError("shrink family: non-finite center");
    if (base.contains(centers[k]))
      throw ValidationError("shrink family: center " + format_double(centers[k]) + " lies on E");
    if (k > 0 && !(centers[k - 1] < centers[k]))
      throw ValidationError("shrink family: centers must be strictly increasing");
  }
  if (widths.empty()) throw ValidationError("shrink family: empty width schedule");
  for (std::size_t n = 0; n < widths.size(); ++n) {
    if (!(widths[n] > 0.0) || !std::isfinite(widths[n]))
      throw ValidationError("shrink family: widths must be positive and finite");
    if (n > 0 && !(widths[n] < widths[n - 1]))
      throw ValidationError("shrink family: widths must be strictly decreasing");
  }
  ShrinkFamily fam(std::move(base), std::move(centers), std::move(widths), placement);
  for (int n = 0; n < fam.size(); ++n) {
    try {
      (void)shrunk_system(fam, n);
    } catch (const ValidationError& e) {
      throw ValidationError("shrink family: schedule entry " + std::to_string(n) + " (width " +
                            format_double(fam.max_width(n)) + ") collides: " + e.what());
    }
  }
  return fam;
}

std::vector<double> ShrinkFamily::default_schedule(const IntervalSystem& base, const std::vector<double>& centers,
                                                   int count) {
  double eps0 = base.diameter();
  for (std::size_t k = 0; k < centers.size(); ++k) {
    eps0 = std::min(eps0, base.distance(cplx(centers[k], 0.0)));
    if (k > 0) eps0 = std::min(eps0, centers[k] - centers[k - 1]);
  }
  eps0 /= 4.0;
  std::vector<double> out;
  for (int n = 0; n < count; ++n) out.push_back(std::ldexp(eps0, -n));
  return out;
}

Interval ShrinkFamily::shrunk_band(int k, int n) const {
  const double c = centers_.at(static_cast<std::size_t>(k));
  const double w = widths_.at(static_cast<std::size_t>(n));
  switch (placement_) {
    case Placement::AtLeft: return {c, c + w};
    case Placement::AtRight: return {c - w, c};
    case Placement::Centered: break;
  }
  return {c - 0.5 * w, c + 0.5 * w};
}

IntervalSystem shrunk_system(const ShrinkFamily& fam, int n) {
  if (n < 0 || n >= fam.size()) throw ValidationError("schedule index " + std::to_string(n) + " out of range");
  std::vector<std::pair<double, double>> pairs;
  for (const auto& b : fam.base().bands()) pairs.emplace_back(b.lo, b.hi);
  for (int k = 0; k < fam.center_count(); ++k) {
    auto b = fam.shrunk_band(k, n);
    pairs.emplace_back(b.lo, b.hi);
  }
  return IntervalSystem::make(pairs);
}

DegenerateAsymptotics::DegenerateAsymptotics(ShrinkFamily fam) : fam_(std::move(fam)), base_(fam_.base()) {
  for (double c : fam_.centers()) poles_.push_back(std::make_unique<PoleGreen>(fam_.base(), c));
}

std::vector<int> DegenerateAsymptotics::shrunk_indices(const IntervalSystem& combined) const {
  std::vector<int> out;
  for (double c : fam_.centers()) out.push_back(*combined.band_of(c));
  return out;
}

std::vector<int> DegenerateAsymptotics::base_indices(const IntervalSystem& combined) const {
  std::vector<int> out;
  for (const auto& b : fam_.base().bands()) out.push_back(*combined.band_of(b.mid()));
  return out;
}

std::vector<double> DegenerateAsymptotics::small_band_measures(int n) const {
  auto combined = shrunk_system(fam_, n);
  InfinityGreen exact(combined);
  std::vector<double> out;
  for (int idx : shrunk_indices(combined)) out.push_back(exact.harmonic_measure(idx));
  return out;
}

AsymptoticGreen DegenerateAsymptotics::phi_asymptotic_with(const std::vector<double>& omegas, cplx z,
                                                           double margin_factor) const {
  for (int k = 0; k < fam_.center_count(); ++k) {
    const double c = fam_.centers()[static_cast<std::size_t>(k)];
    const double margin = margin_factor * fam_.base().distance(cplx(c, 0.0));
    if (std::abs(z - c) < margin)
      throw ValidationError("probe (" + format_double(z.real()) + ", " + format_double(z.imag()) +
                            ") is within the exclusion margin " + format_double(margin) + " of c = " + format_double(c));
  }
  double g = base_.g(z);
  for (std::size_t k = 0; k < poles_.size(); ++k) g -= omegas.at(k) * poles_[k]->g(z);
  return {g, std::exp(g)};
}

AsymptoticGreen DegenerateAsymptotics::phi_asymptotic(int n, cplx z, double margin_factor) const {
  return phi_asymptotic_with(small_band_measures(n), z, margin_factor);
}

double DegenerateAsymptotics::capacity_asymptotic(int n) const {
  auto omegas = small_band_measures(n);
  double log_cap = -base_.robin_constant();
  for (std::size_t k = 0; k < poles_.size(); ++k) log_cap += omegas[k] * poles_[k]->g_at_infinity();
  return std::exp(log_cap);
}

double DegenerateAsymptotics::hm_asymptotic(int n, int band) const {
  auto omegas = small_band_measures(n);
  double v = base_.harmonic_measure(band);
  for (std::size_t k = 0; k < poles_.size(); ++k) v -= omegas[k] * poles_[k]->harmonic_measure(band);
  return v;
}

bool ratio_series_bounded(const std::vector<double>& ratios, const std::vector<double>& abs_errors,
                          double noise_floor) {
  const std::size_t n = ratios.size();
  if (n < 3) return true;
  const std::size_t first = n >= 4 ? n - 4 : 0;
  auto doubles = [&](std::size_t i) {
    if (abs_errors[i + 1] <= noise_floor) return false;
    return ratios[i + 1] > 2.0 * ratios[i];
  };
  for (std::size_t i = first; i + 2 < n; ++i)
    if (doubles(i) && doubles(i + 1)) return false;
  return true;
}

SweepResult DegenerateAsymptotics::convergence_sweep(const std::vector<cplx>& probes) const {
  if (fam_.size() < 4) throw ValidationError("convergence sweep: the schedule needs at least 4 entries");
  // Validate probe margins before doing any work.
  std::vector<double> zeros(static_cast<std::size_t>(fam_.center_count()), 0.0);
  for (cplx p : probes) {
    for (int k = 0; k < fam_.center_count(); ++k) {
      const double c = fam_.centers()[static_cast<std::size_t>(k)];
      if (std::abs(p - c) < 0.5 * fam_.base().distance(cplx(c, 0.0)))
        throw ValidationError("probe (" + format_double(p.real()) + ", " + format_double(p.imag()) +
                              ") is inside the exclusion margin of c = " + format_double(c));
    }
    if (fam_.base().contains(p)) throw DomainError("probe lies on E");
  }

  // Base-set quantities do not depend on n.
  std::vector<double> g_base, base_hm;
  std::vector<std::vector<double>> g_pole;
  for (cplx p : probes) {
    g_base.push_back(base_.g(p));
    std::vector<double> row;
    for (const auto& pg : poles_) row.push_back(pg->g(p));
    g_pole.push_back(std::move(row));
  }
  const int l = fam_.base().band_count();

  SweepResult out;
  for (int n = 0; n < fam_.size(); ++n) {
    auto combined = shrunk_system(fam_, n);
    InfinityGreen exact(combined);
    std::vector<double> omegas;
    for (int idx : shrunk_indices(combined)) omegas.push_back(exact.harmonic_measure(idx));
    double max_omega = 0.0;
    for (double w : omegas) max_omega = std::max(max_omega, w);
    auto make_row = [&](std::string quantity, int id, cplx probe, double ex, double ap) {
      AsymptoticReport r;
      r.n = n;
      r.epsilon = fam_.max_width(n);
      r.omegas = omegas;
      r.quantity = std::move(quantity);
      r.probe_id = id;
      r.probe = probe;
      r.exact = ex;
      r.approx = ap;
      r.abs_error = std::abs(ex - ap);
      if (max_omega > 0.0)
        r.ratio = r.abs_error / (max_omega * max_omega);
      else
        r.ratio = r.abs_error <= kSweepNoiseFloor ? 0.0 : INFINITY;
      out.rows.push_back(std::move(r));
    };

    for (std::size_t p = 0; p < probes.size(); ++p) {
      double approx = g_base[p];
      for (std::size_t k = 0; k < omegas.size(); ++k) approx -= omegas[k] * g_pole[p][k];
      make_row("g", static_cast<int>(p), probes[p], exact.g(probes[p]), approx);
    }

    double log_cap = -base_.robin_constant();
    for (std::size_t k = 0; k < poles_.size(); ++k) log_cap += omegas[k] * poles_[k]->g_at_infinity();
    const double cap_asym = std::exp(log_cap);
    out.cap_single_reading.push_back(cap_asym);
    out.cap_double_reading.push_back(cap_asym * base_.capacity());
    make_row("cap", -1, cplx(INFINITY, 0.0), exact.capacity(), cap_asym);

    auto base_idx = base_indices(combined);
    for (int j = 0; j < l; ++j) {
      double approx = base_.harmonic_measure(j);
      for (std::size_t k = 0; k < poles_.size(); ++k) approx -= omegas[k] * poles_[k]->harmonic_measure(j);
      make_row("hm", j, cplx(INFINITY, 0.0), exact.harmonic_measure(base_idx[static_cast<std::size_t>(j)]), approx);
    }
  }

  // Group series by (quantity, id) and apply the growth test.
  std::map<std::pair<std::string, int>, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto& r : out.rows) {
    auto& s = series[{r.quantity, r.probe_id}];
    s.first.push_back(r.ratio);
    s.second.push_back(r.abs_error);
  }
  for (const auto& [key, s] : series) {
    if (!ratio_series_bounded(s.first, s.second)) {
      out.verdict.bounded = false;
      out.verdict.failures.push_back(key.first + "[" + std::to_string(key.second) + "]: error/omega^2 grows");
    }
  }
  return out;
}

}  // namespace ivgreen
