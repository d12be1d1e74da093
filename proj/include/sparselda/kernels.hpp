#pragma once

// Dense double-precision inner loops shared by the solvers.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, a SIMD variant (AVX2+FMA on x86-64, NEON on aarch64). The
// variant is chosen once at first use from the running CPU; tests may force
// a specific one with set_isa().

#include <cstddef>
#include <span>
#include <string_view>

namespace slda::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// Best variant the running CPU supports.
Isa detect_isa() noexcept;

/// Variant currently used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Forces a variant. Returns false (and changes nothing) if the CPU or the
/// build does not provide it.
bool set_isa(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

double sum_squares(std::span<const double> x);

/// y = A x for a column-major rows×cols matrix with leading dimension ld.
void gemv_colmajor(const double* a, std::size_t rows, std::size_t cols, std::size_t ld,
                   std::span<const double> x, std::span<double> y);

/// Raw per-variant entry points. Used by the equivalence tests; production
/// code goes through the dispatching functions above.
struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*sum_squares)(const double*, std::size_t);
};

const KernelTable& table(Isa isa);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_squares(const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_squares(const double* x, std::size_t n);
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_squares(const double* x, std::size_t n);
}  // namespace neon

}  // namespace slda::kernels
