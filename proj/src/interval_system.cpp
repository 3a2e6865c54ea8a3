#include "ivgreen/interval_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ivgreen/errors.hpp"

namespace ivgreen {

namespace {

std::string pair_text(double lo, double hi) {
  return "(" + format_double(lo) + ", " + format_double(hi) + ")";
}

}  // namespace

IntervalSystem IntervalSystem::make(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) throw ValidationError("interval system: no intervals given");
  std::vector<std::pair<double, double>> sorted(pairs.begin(), pairs.end());
  for (const auto& [lo, hi] : sorted) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw ValidationError("interval system: non-finite endpoint in " + pair_text(lo, hi));
    if (!(lo < hi)) throw ValidationError("interval system: empty interval " + pair_text(lo, hi));
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ends;
  ends.reserve(2 * sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && !(sorted[i - 1].second < sorted[i].first)) {
      throw ValidationError("interval system: " + pair_text(sorted[i].first, sorted[i].second) +
                            " overlaps or touches " +
                            pair_text(sorted[i - 1].first, sorted[i - 1].second));
    }
    ends.push_back(sorted[i].first);
    ends.push_back(sorted[i].second);
  }
  return IntervalSystem(std::move(ends));
}

IntervalSystem IntervalSystem::make(std::initializer_list<std::pair<double, double>> pairs) {
  return make(std::span<const std::pair<double, double>>(pairs.begin(), pairs.size()));
}

IntervalSystem IntervalSystem::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("system JSON: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("system JSON: top level must be an object");
  for (const auto& item : doc.items()) {
    if (item.key() != "intervals") throw ValidationError("system JSON: unknown key '" + item.key() + "'");
  }
  if (!doc.contains("intervals") || !doc["intervals"].is_array())
    throw ValidationError("system JSON: missing array 'intervals'");
  std::vector<std::pair<double, double>> pairs;
  for (const auto& entry : doc["intervals"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      throw ValidationError("system JSON: each interval must be [lo, hi], got " + entry.dump());
    pairs.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return make(pairs);
}

std::string IntervalSystem::to_json() const {
  std::ostringstream out;
  out << "{\"intervals\": [";
  for (int j = 0; j < band_count(); ++j) {
    if (j) out << ", ";
    out << "[" << format_double(band(j).lo) << ", " << format_double(band(j).hi) << "]";
  }
  out << "]}";
  return out.str();
}

Interval IntervalSystem::band(int j) const {
  return {endpoints_[2 * static_cast<std::size_t>(j)], endpoints_[2 * static_cast<std::size_t>(j) + 1]};
}

Interval IntervalSystem::gap(int j) const {
  return {endpoints_[2 * static_cast<std::size_t>(j) + 1], endpoints_[2 * static_cast<std::size_t>(j) + 2]};
}

std::vector<Interval> IntervalSystem::bands() const {
  std::vector<Interval> out;
  for (int j = 0; j < band_count(); ++j) out.push_back(band(j));
  return out;
}

std::vector<Interval> IntervalSystem::gaps() const {
  std::vector<Interval> out;
  for (int j = 0; j + 1 < band_count(); ++j) out.push_back(gap(j));
  return out;
}

std::optional<int> IntervalSystem::band_of(double x) const {
  auto it = std::upper_bound(endpoints_.begin(), endpoints_.end(), x);
  auto idx = it - endpoints_.begin();
  // Odd count of endpoints <= x means inside a band; exact hits on a right
  // endpoint land at an even index and are also inside.
  if (idx % 2 == 1) return static_cast<int>(idx / 2);
  if (idx > 0 && endpoints_[static_cast<std::size_t>(idx - 1)] == x) return static_cast<int>(idx / 2 - 1);
  return std::nullopt;
}

std::optional<int> IntervalSystem::gap_of(double x) const {
  if (contains(x) || x < left() || x > right()) return std::nullopt;
  auto it = std::upper_bound(endpoints_.begin(), endpoints_.end(), x);
  return static_cast<int>((it - endpoints_.begin()) / 2 - 1);
}

double IntervalSystem::distance(cplx z) const {
  double best = INFINITY;
  for (int j = 0; j < band_count(); ++j) {
    auto b = band(j);
    double dx = z.real() < b.lo ? b.lo - z.real() : (z.real() > b.hi ? z.real() - b.hi : 0.0);
    best = std::min(best, std::hypot(dx, z.imag()));
  }
  return best;
}

double IntervalSystem::h(double x) const {
  double p = 1.0;
  for (double a : endpoints_) p *= (x - a);
  return p;
}

cplx IntervalSystem::h(cplx z) const {
  cplx p = 1.0;
  for (double a : endpoints_) p *= (z - a);
  return p;
}

cplx IntervalSystem::sqrt_h(cplx z, Side side) const {
  if (z.imag() != 0.0) {
    cplx p = 1.0;
    for (double a : endpoints_) p *= std::sqrt(z - a);
    return p;
  }
  double x = z.real();
  auto b = band_of(x);
  bool on_edge = b && (x == band(*b).lo || x == band(*b).hi);
  if (b && !on_edge && side == Side::None)
    throw DomainError("sqrt_h: x = " + format_double(x) + " is inside band " + std::to_string(*b) +
                      "; a boundary side is required");
  // Each endpoint right of x contributes a factor i (upper) or -i (lower).
  double mag = 1.0;
  int right_count = 0;
  for (double a : endpoints_) {
    double d = x - a;
    if (d < 0) {
      ++right_count;
      mag *= std::sqrt(-d);
    } else {
      mag *= std::sqrt(d);
    }
  }
  double sign = (right_count / 2) % 2 == 0 ? 1.0 : -1.0;
  if (right_count % 2 == 0) return {sign * mag, 0.0};
  double im = side == Side::Lower ? -sign * mag : sign * mag;
  return {0.0, im};
}

double IntervalSystem::sqrt_h_real(double x) const {
  if (auto b = band_of(x); b && x != band(*b).lo && x != band(*b).hi)
    throw DomainError("sqrt_h_real: x = " + format_double(x) + " lies inside E");
  return sqrt_h(cplx(x, 0.0)).real();
}

cplx IntervalSystem::sqrt_h_near(int idx, cplx u) const {
  const double anchor = endpoint(idx);
  if (u.imag() == 0.0) return {sqrt_h_real_near(idx, u.real()), 0.0};
  const cplx z = anchor + u;
  cplx p = std::sqrt(u);
  for (int i = 0; i < static_cast<int>(endpoints_.size()); ++i)
    if (i != idx) p *= std::sqrt(z - endpoints_[static_cast<std::size_t>(i)]);
  return p;
}

double IntervalSystem::sqrt_h_real_near(int idx, double u) const {
  const double x = endpoint(idx) + u;
  double mag = std::sqrt(std::abs(u));
  int right_count = u < 0 ? 1 : 0;
  for (int i = 0; i < static_cast<int>(endpoints_.size()); ++i) {
    if (i == idx) continue;
    double d = x - endpoints_[static_cast<std::size_t>(i)];
    if (d < 0) ++right_count;
    mag *= std::sqrt(std::abs(d));
  }
  if (right_count % 2 != 0)
    throw DomainError("sqrt_h_real_near: a_" + std::to_string(idx) + " + " + format_double(u) + " lies inside E");
  return (right_count / 2) % 2 == 0 ? mag : -mag;
}

double IntervalSystem::rest_weight(double x, int skip_lo, int skip_hi) const {
  double p = 1.0;
  for (int i = 0; i < static_cast<int>(endpoints_.size()); ++i) {
    if (i == skip_lo || i == skip_hi) continue;
    p *= std::abs(x - endpoints_[static_cast<std::size_t>(i)]);
  }
  return 1.0 / std::sqrt(p);
}

}  // namespace ivgreen
