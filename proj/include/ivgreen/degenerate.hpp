#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ivgreen/green.hpp"
#include "ivgreen/interval_system.hpp"

namespace ivgreen {

/// Where the limit point sits inside its shrinking band.
enum class Placement { Centered, AtLeft, AtRight };

/// Base set E plus limit points c_1 < ... < c_m and a strictly decreasing
/// width schedule; entry n produces the bands I_n = U [B_kn, C_kn] with
/// c_k in [B_kn, C_kn] and C_kn - B_kn = widths[n].
class ShrinkFamily {
 public:
  /// Validates centers (sorted, off E), widths (positive, strictly
  /// decreasing) and that every scheduled band stays disjoint from E and
  /// from its siblings.
  static ShrinkFamily make(IntervalSystem base, std::vector<double> centers, std::vector<double> widths,
                           Placement placement = Placement::Centered);

  /// eps_n = eps0 2^-n with eps0 = min(dist(c_k, E), center gaps) / 4.
  static std::vector<double> default_schedule(const IntervalSystem& base, const std::vector<double>& centers,
                                              int count);

  const IntervalSystem& base() const { return base_; }
  const std::vector<double>& centers() const { return centers_; }
  const std::vector<double>& widths() const { return widths_; }
  Placement placement() const { return placement_; }
  int size() const { return static_cast<int>(widths_.size()); }
  int center_count() const { return static_cast<int>(centers_.size()); }

  Interval shrunk_band(int k, int n) const;
  /// max_k (C_kn - B_kn)
  double max_width(int n) const { return widths_.at(static_cast<std::size_t>(n)); }

 private:
  ShrinkFamily(IntervalSystem base, std::vector<double> centers, std::vector<double> widths, Placement placement)
      : base_(std::move(base)), centers_(std::move(centers)), widths_(std::move(widths)), placement_(placement) {}
  IntervalSystem base_;
  std::vector<double> centers_;
  std::vector<double> widths_;
  Placement placement_;
};

/// E u I_n, validated.
IntervalSystem shrunk_system(const ShrinkFamily& fam, int n);

struct AsymptoticGreen {
  double g_approx;
  double phi_modulus;
};

/// One exact-vs-asymptotic comparison at schedule entry n.
struct AsymptoticReport {
  int n = 0;
  double epsilon = 0.0;
  std::vector<double> omegas;
  std::string quantity;  // "g", "cap", "hm"
  int probe_id = -1;     // probe index for "g", band index for "hm"
  cplx probe;
  double exact = 0.0;
  double approx = 0.0;
  double abs_error = 0.0;
  double ratio = 0.0;    // abs_error / (max_k omega_kn)^2
};

struct SweepVerdict {
  bool bounded = true;
  std::vector<std::string> failures;
};

struct SweepResult {
  std::vector<AsymptoticReport> rows;
  /// Asymptotic capacity with the cap(E) factor applied once and twice.
  std::vector<double> cap_single_reading;
  std::vector<double> cap_double_reading;
  SweepVerdict verdict;
};

/// Errors at or below this level are indistinguishable from quadrature
/// noise; their ratios cannot trigger the growth test.
inline constexpr double kSweepNoiseFloor = 1e-10;

/// Exact and asymptotic quantities for one family. Base-set Green's
/// functions are solved once and shared across schedule entries.
class DegenerateAsymptotics {
 public:
  explicit DegenerateAsymptotics(ShrinkFamily fam);

  const ShrinkFamily& family() const { return fam_; }
  const InfinityGreen& base_green() const { return base_; }
  const PoleGreen& pole_green(int k) const { return *poles_.at(static_cast<std::size_t>(k)); }

  /// omega_kn = omega(inf, [B_kn, C_kn], E u I_n).
  std::vector<double> small_band_measures(int n) const;
  /// g(z, inf, E) - sum_k omega_kn g(z, c_k, E). Throws ValidationError
  /// when |z - c_k| < margin_factor * dist(c_k, E).
  AsymptoticGreen phi_asymptotic(int n, cplx z, double margin_factor = 0.5) const;
  /// Same with caller-supplied omegas.
  AsymptoticGreen phi_asymptotic_with(const std::vector<double>& omegas, cplx z, double margin_factor = 0.5) const;
  /// cap(E) prod_k |phi(inf, c_k, E)|^omega_kn.
  double capacity_asymptotic(int n) const;
  /// omega(inf, E_j, E) - sum_k omega_kn omega(c_k, E_j, E), j a band of E.
  double hm_asymptotic(int n, int band) const;

  /// Band index of each shrunk band inside E u I_n.
  std::vector<int> shrunk_indices(const IntervalSystem& combined) const;
  /// Band index of each band of E inside E u I_n.
  std::vector<int> base_indices(const IntervalSystem& combined) const;

  SweepResult convergence_sweep(const std::vector<cplx>& probes) const;

 private:
  ShrinkFamily fam_;
  InfinityGreen base_;
  std::vector<std::unique_ptr<PoleGreen>> poles_;
};

/// The growth test: fails a series when the ratio more than doubles on two
/// consecutive steps among its last three refinements. Entries with
/// abs_error <= noise_floor never count as doubling.
bool ratio_series_bounded(const std::vector<double>& ratios, const std::vector<double>& abs_errors,
                          double noise_floor = kSweepNoiseFloor);

}  // namespace ivgreen
