#include <immintrin.h>

#include <cmath>
#include <vector>

#include "ivgreen/kernels.hpp"

namespace ivgreen::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

void inv_sqrt_abs_product(std::span<const double> x, std::span<const double> pts, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t k = 0;
  const __m256d one = _mm256_set1_pd(1.0);
  for (; k + 4 <= n; k += 4) {
    __m256d xv = _mm256_loadu_pd(x.data() + k);
    __m256d p = one;
    for (double a : pts) p = _mm256_mul_pd(p, abs_pd(_mm256_sub_pd(xv, _mm256_set1_pd(a))));
    _mm256_storeu_pd(out.data() + k, _mm256_div_pd(one, _mm256_sqrt_pd(p)));
  }
  scalar::inv_sqrt_abs_product(x.subspan(k), pts, out.subspan(k));
}

void power_moments(std::span<const double> w, std::span<const double> u, std::span<double> out) {
  const std::size_t n = w.size();
  const std::size_t m = out.size();
  constexpr std::size_t kMaxMoments = 16;
  if (m > kMaxMoments) return scalar::power_moments(w, u, out);
  __m256d acc[kMaxMoments];
  for (std::size_t i = 0; i < m; ++i) acc[i] = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d term = _mm256_loadu_pd(w.data() + k);
    __m256d uv = _mm256_loadu_pd(u.data() + k);
    for (std::size_t i = 0; i < m; ++i) {
      acc[i] = _mm256_add_pd(acc[i], term);
      term = _mm256_mul_pd(term, uv);
    }
  }
  std::vector<double> tail(m, 0.0);
  scalar::power_moments(w.subspan(k), u.subspan(k), tail);
  for (std::size_t i = 0; i < m; ++i) out[i] = hsum(acc[i]) + tail[i];
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d xv = _mm256_loadu_pd(x.data() + k);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(coeffs[i]));
    _mm256_storeu_pd(out.data() + k, acc);
  }
  scalar::horner(coeffs, x.subspan(k), out.subspan(k));
}

void chebyshev_of_quadratic(int s, double alpha, double beta, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t k = 0;
  const __m256d av = _mm256_set1_pd(alpha), bv = _mm256_set1_pd(beta), two = _mm256_set1_pd(2.0);
  for (; k + 4 <= n; k += 4) {
    __m256d xv = _mm256_loadu_pd(x.data() + k);
    __m256d y = _mm256_add_pd(_mm256_mul_pd(av, _mm256_mul_pd(xv, xv)), bv);
    __m256d t0 = _mm256_set1_pd(1.0), t1 = y;
    if (s == 0) t1 = t0;
    for (int i = 1; i < s; ++i) {
      __m256d t2 = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(two, y), t1), t0);
      t0 = t1;
      t1 = t2;
    }
    _mm256_storeu_pd(out.data() + k, t1);
  }
  scalar::chebyshev_of_quadratic(s, alpha, beta, x.subspan(k), out.subspan(k));
}

}  // namespace ivgreen::kernels::avx2
