#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ivgreen {

using cplx = std::complex<double>;

/// Which boundary value of sqrt(H) to take on the interior of a band.
enum class Side { None, Upper, Lower };

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// A finite union of pairwise disjoint closed real intervals
/// E = [a_1,a_2] u [a_3,a_4] u ... u [a_{2l-1},a_{2l}], stored sorted.
///
/// Immutable after construction. The branch of sqrt(H) is the product of
/// principal roots sqrt(z - a_j); this is analytic off E and positive on
/// (a_{2l}, inf).
class IntervalSystem {
 public:
  /// Validates and sorts. Throws ValidationError on empty input, on a pair
  /// with lo >= hi, on non-finite values, and on overlapping or touching
  /// intervals.
  static IntervalSystem make(std::span<const std::pair<double, double>> pairs);
  static IntervalSystem make(std::initializer_list<std::pair<double, double>> pairs);

  /// Parses {"intervals": [[lo,hi], ...]}. Unknown keys are rejected.
  static IntervalSystem from_json(const std::string& text);
  std::string to_json() const;

  int band_count() const { return static_cast<int>(endpoints_.size() / 2); }
  std::span<const double> endpoints() const { return endpoints_; }
  double endpoint(int i) const { return endpoints_[static_cast<std::size_t>(i)]; }
  double left() const { return endpoints_.front(); }
  double right() const { return endpoints_.back(); }
  double diameter() const { return right() - left(); }
  double center() const { return 0.5 * (left() + right()); }

  /// 0-based band index j -> [a_{2j+1}, a_{2j+2}] with 1-based endpoints a_1 < ... < a_2l.
  Interval band(int j) const;
  /// 0-based gap index j -> the open gap right of band j (l-1 gaps).
  Interval gap(int j) const;
  std::vector<Interval> bands() const;
  std::vector<Interval> gaps() const;

  /// Band containing x (closed), if any.
  std::optional<int> band_of(double x) const;
  /// Gap containing x (open), if any.
  std::optional<int> gap_of(double x) const;
  bool contains(double x) const { return band_of(x).has_value(); }
  bool contains(cplx z) const { return z.imag() == 0.0 && contains(z.real()); }
  /// Euclidean distance from z to E.
  double distance(cplx z) const;

  /// H(x) = prod (x - a_j).
  double h(double x) const;
  cplx h(cplx z) const;

  /// Branch-consistent sqrt(H). For real z inside a band a side must be
  /// given; elsewhere `side` is ignored.
  cplx sqrt_h(cplx z, Side side = Side::None) const;
  /// Real value of sqrt(H) on R \ E (the analytic branch; its sign is
  /// (-1)^(number of bands right of x)).
  double sqrt_h_real(double x) const;
  /// sqrt(H) at a_idx + u off E, with the factor sqrt(z - a_idx) taken from
  /// u directly so that no precision is lost next to the branch point.
  cplx sqrt_h_near(int idx, cplx u) const;
  double sqrt_h_real_near(int idx, double u) const;

  /// prod_{i != skip_lo, skip_hi} |x - a_i|^{-1/2}; the smooth part of
  /// 1/sqrt|H| on the segment between a_{skip_lo} and a_{skip_hi}.
  double rest_weight(double x, int skip_lo, int skip_hi) const;

  bool operator==(const IntervalSystem&) const = default;

 private:
  explicit IntervalSystem(std::vector<double> endpoints) : endpoints_(std::move(endpoints)) {}
  std::vector<double> endpoints_;
};

}  // namespace ivgreen
