#include <atomic>
#include <cassert>

#include "sparselda/kernels.hpp"

namespace slda::kernels {

namespace {

constexpr KernelTable kScalar{scalar::dot, scalar::axpy, scalar::sum_squares};
constexpr KernelTable kAvx2{avx2::dot, avx2::axpy, avx2::sum_squares};
constexpr KernelTable kNeon{neon::dot, neon::axpy, neon::sum_squares};

bool cpu_has(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> t{&table(detect_isa())};
  return t;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept { return cpu_has(isa); }

Isa detect_isa() noexcept {
  if (cpu_has(Isa::avx2)) return Isa::avx2;
  if (cpu_has(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const KernelTable& table(Isa isa) {
  switch (isa) {
    case Isa::avx2: return kAvx2;
    case Isa::neon: return kNeon;
    case Isa::scalar: break;
  }
  return kScalar;
}

Isa active_isa() noexcept {
  const KernelTable* t = current().load(std::memory_order_relaxed);
  if (t == &kAvx2) return Isa::avx2;
  if (t == &kNeon) return Isa::neon;
  return Isa::scalar;
}

bool set_isa(Isa isa) noexcept {
  if (!cpu_has(isa)) return false;
  current().store(&table(isa), std::memory_order_relaxed);
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return current().load(std::memory_order_relaxed)->dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  current().load(std::memory_order_relaxed)->axpy(alpha, x.data(), y.data(), x.size());
}

double sum_squares(std::span<const double> x) {
  return current().load(std::memory_order_relaxed)->sum_squares(x.data(), x.size());
}

void gemv_colmajor(const double* a, std::size_t rows, std::size_t cols, std::size_t ld,
                   std::span<const double> x, std::span<double> y) {
  assert(x.size() == cols && y.size() == rows);
  const KernelTable* t = current().load(std::memory_order_relaxed);
  for (std::size_t i = 0; i < rows; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    if (x[j] != 0.0) t->axpy(x[j], a + j * ld, y.data(), rows);
  }
}

}  // namespace slda::kernels
