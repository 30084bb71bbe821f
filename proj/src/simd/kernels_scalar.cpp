#include <cmath>

#include "sqpart/simd/kernels.hpp"

namespace sqpart::simd::scalar {

double exp_weighted_sum(std::span<const double> weight, std::size_t t_end, double u, int power) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t t = 1; t <= t_end; ++t) {
    const double td = static_cast<double>(t);
    double term = weight[t];
    for (int p = 0; p < power; ++p) term *= td;
    term *= std::exp(-td * u);
    const double next = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  return sum + comp;
}

bool add_lagged(LimbGrid grid, std::size_t lag, std::size_t n_max, std::span<const std::uint32_t> width) {
  for (std::size_t m = lag; m <= n_max; ++m) {
    unsigned char carry = 0;
    std::uint64_t* dst = grid.limbs + m;
    const std::uint64_t* src = grid.limbs + (m - lag);
    for (std::uint32_t k = 0; k < width[m]; ++k) {
      const std::size_t off = k * grid.stride;
      std::uint64_t s = 0;
      const bool c1 = __builtin_add_overflow(dst[off], src[off], &s);
      const bool c2 = __builtin_add_overflow(s, std::uint64_t{carry}, &s);
      dst[off] = s;
      carry = static_cast<unsigned char>(c1 || c2);
    }
    if (carry != 0) return false;
  }
  return true;
}

}  // namespace sqpart::simd::scalar
