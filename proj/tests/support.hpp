#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ivgreen/interval_system.hpp"

namespace ivgreen::testing {

/// Random system with `l` bands inside roughly [-5, 5]; bands and gaps are
/// at least 0.05 wide.
inline IntervalSystem random_system(std::mt19937_64& rng, int l) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cuts;
  for (int i = 0; i < 2 * l; ++i) cuts.push_back(u(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> bands;
  for (int i = 0; i < 2 * l; i += 2)
    bands.emplace_back(-5.0 + 10.0 * cuts[static_cast<std::size_t>(i)] + 0.05 * i,
                       -5.0 + 10.0 * cuts[static_cast<std::size_t>(i + 1)] + 0.05 * (i + 1));
  return IntervalSystem::make(bands);
}

/// Random point of the box [-7, 7] x [-4, 4] at distance >= min_dist from E.
inline cplx random_point_off(std::mt19937_64& rng, const IntervalSystem& sys, double min_dist = 0.05) {
  std::uniform_real_distribution<double> re(-7.0, 7.0), im(-4.0, 4.0);
  for (;;) {
    cplx z(re(rng), im(rng));
    if (sys.distance(z) >= min_dist) return z;
  }
}

/// Random real point off E at distance >= min_dist, in [left - 2, right + 2].
inline double random_real_off(std::mt19937_64& rng, const IntervalSystem& sys, double min_dist = 0.05) {
  std::uniform_real_distribution<double> x(sys.left() - 2.0, sys.right() + 2.0);
  for (;;) {
    double v = x(rng);
    if (sys.distance(cplx(v, 0.0)) >= min_dist) return v;
  }
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace ivgreen::testing
