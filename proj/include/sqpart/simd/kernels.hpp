#pragma once

// Data-parallel inner loops with a scalar reference and vectorized variants.
// The active variant is chosen once at runtime from CPU features; the
// SQPART_ISA environment variable ("scalar" | "avx2") or set_active_isa() overrides it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#if defined(__x86_64__) || defined(_M_X64)
#define SQPART_HAVE_X86 1
#else
#define SQPART_HAVE_X86 0
#endif

namespace sqpart::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
/// Throws DomainError when the CPU lacks `isa`.
void set_active_isa(Isa isa);
/// Parses "scalar" / "avx2"; throws DomainError otherwise.
Isa parse_isa(std::string_view name);

/// Multi-limb numbers stored limb-major: limb k of entry m lives at limbs[k * stride + m].
struct LimbGrid {
  std::uint64_t* limbs;
  std::size_t stride;
};

// Kernel contracts (identical across variants):
//
// exp_weighted_sum: returns sum_{t=1}^{t_end} weight[t] * t^power * exp(-t * u) with
// compensated (Neumaier) accumulation. weight.size() > t_end, u > 0, 0 <= power <= 8.
//
// add_lagged: for m = lag, lag+1, ..., n_max in that order, entry[m] += entry[m - lag]
// over the low width[m] limbs; width must be non-decreasing and every entry's limbs at
// or above its width must be zero. Returns false if a carry escapes the top limb.

double exp_weighted_sum(std::span<const double> weight, std::size_t t_end, double u, int power);
bool add_lagged(LimbGrid grid, std::size_t lag, std::size_t n_max, std::span<const std::uint32_t> width);

namespace scalar {
double exp_weighted_sum(std::span<const double> weight, std::size_t t_end, double u, int power);
bool add_lagged(LimbGrid grid, std::size_t lag, std::size_t n_max, std::span<const std::uint32_t> width);
}  // namespace scalar

#if SQPART_HAVE_X86
namespace avx2 {
double exp_weighted_sum(std::span<const double> weight, std::size_t t_end, double u, int power);
bool add_lagged(LimbGrid grid, std::size_t lag, std::size_t n_max, std::span<const std::uint32_t> width);
}  // namespace avx2
#endif

}  // namespace sqpart::simd
