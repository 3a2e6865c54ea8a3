#include <atomic>
#include <cstdlib>
#include <string>

#include "ivgreen/errors.hpp"
#include "ivgreen/kernels.hpp"

namespace ivgreen::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("IVGREEN_ISA"); env && std::string(env) == "scalar") return Isa::Scalar;
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(IVGREEN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw ValidationError("kernel ISA '" + std::string(isa_name(isa)) + "' is not available");
  current().store(isa, std::memory_order_relaxed);
}

#if defined(IVGREEN_HAVE_AVX2)
#define IVGREEN_DISPATCH(fn, ...)                                \
  do {                                                           \
    if (active_isa() == Isa::Avx2) return avx2::fn(__VA_ARGS__); \
    return scalar::fn(__VA_ARGS__);                              \
  } while (0)
#else
#define IVGREEN_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void inv_sqrt_abs_product(std::span<const double> x, std::span<const double> pts, std::span<double> out) {
  IVGREEN_DISPATCH(inv_sqrt_abs_product, x, pts, out);
}

void power_moments(std::span<const double> w, std::span<const double> u, std::span<double> out) {
  IVGREEN_DISPATCH(power_moments, w, u, out);
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  IVGREEN_DISPATCH(horner, coeffs, x, out);
}

void chebyshev_of_quadratic(int s, double alpha, double beta, std::span<const double> x, std::span<double> out) {
  IVGREEN_DISPATCH(chebyshev_of_quadratic, s, alpha, beta, x, out);
}

}  // namespace ivgreen::kernels
