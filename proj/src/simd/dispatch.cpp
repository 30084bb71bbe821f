#include <atomic>
#include <cstdlib>
#include <string>

#include "sqpart/error.hpp"
#include "sqpart/simd/kernels.hpp"

namespace sqpart::simd {

namespace {

Isa detect_best() {
#if SQPART_HAVE_X86
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("SQPART_ISA"); env != nullptr && *env != '\0') {
    const Isa requested = parse_isa(env);
    if (isa_supported(requested)) return requested;
  }
  return detect_best();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  throw DomainError("unknown instruction set '" + std::string(name) + "'");
}

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if SQPART_HAVE_X86
  if (isa == Isa::kAvx2) {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }
#endif
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("instruction set " + std::string(isa_name(isa)) + " not supported on this CPU");
  }
  current().store(isa, std::memory_order_relaxed);
}

double exp_weighted_sum(std::span<const double> weight, std::size_t t_end, double u, int power) {
#if SQPART_HAVE_X86
  if (active_isa() == Isa::kAvx2) return avx2::exp_weighted_sum(weight, t_end, u, power);
#endif
  return scalar::exp_weighted_sum(weight, t_end, u, power);
}

bool add_lagged(LimbGrid grid, std::size_t lag, std::size_t n_max, std::span<const std::uint32_t> width) {
#if SQPART_HAVE_X86
  if (active_isa() == Isa::kAvx2) return avx2::add_lagged(grid, lag, n_max, width);
#endif
  return scalar::add_lagged(grid, lag, n_max, width);
}

}  // namespace sqpart::simd
