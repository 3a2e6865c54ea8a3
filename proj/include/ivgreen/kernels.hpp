#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops of the quadrature and polynomial-scan code.
// Every kernel has a scalar reference implementation; wider variants are
// selected at runtime and must agree with the reference to a few ulps
// (summation order differs).

namespace ivgreen::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// The instruction set the dispatched entry points currently use. Defaults
/// to the widest available one; IVGREEN_ISA=scalar in the environment
/// forces the reference path.
Isa active_isa();
/// Throws ValidationError if `isa` is not available on this CPU.
void force_isa(Isa isa);

/// out[k] = prod_m |x[k] - pts[m]|^(-1/2)
void inv_sqrt_abs_product(std::span<const double> x, std::span<const double> pts, std::span<double> out);

/// out[i] = sum_k w[k] * u[k]^i,  i = 0 .. out.size()-1
void power_moments(std::span<const double> w, std::span<const double> u, std::span<double> out);

/// out[k] = sum_i coeffs[i] * x[k]^i
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);

/// out[k] = T_s(alpha * x[k]^2 + beta), T_s the first-kind Chebyshev polynomial.
void chebyshev_of_quadratic(int s, double alpha, double beta, std::span<const double> x, std::span<double> out);

namespace scalar {
void inv_sqrt_abs_product(std::span<const double> x, std::span<const double> pts, std::span<double> out);
void power_moments(std::span<const double> w, std::span<const double> u, std::span<double> out);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
void chebyshev_of_quadratic(int s, double alpha, double beta, std::span<const double> x, std::span<double> out);
}  // namespace scalar

#if defined(IVGREEN_HAVE_AVX2)
namespace avx2 {
void inv_sqrt_abs_product(std::span<const double> x, std::span<const double> pts, std::span<double> out);
void power_moments(std::span<const double> w, std::span<const double> u, std::span<double> out);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
void chebyshev_of_quadratic(int s, double alpha, double beta, std::span<const double> x, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace ivgreen::kernels
