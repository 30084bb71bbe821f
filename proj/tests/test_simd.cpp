#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sqpart/error.hpp"
#include "sqpart/simd/kernels.hpp"

using namespace sqpart;
using namespace sqpart::simd;

namespace {

long double reference_sum(const std::vector<double>& w, std::size_t t_end, double u, int power) {
  long double total = 0.0L;
  for (std::size_t t = 1; t <= t_end; ++t) {
    total += static_cast<long double>(w[t]) * std::pow(static_cast<long double>(t), power) *
             std::exp(-static_cast<long double>(t) * static_cast<long double>(u));
  }
  return total;
}

struct Grid {
  std::size_t stride;
  std::uint32_t height;
  std::vector<std::uint64_t> limbs;
  std::vector<std::uint32_t> width;
};

// Random multi-limb entries whose high limbs respect a non-decreasing width profile.
Grid random_grid(std::mt19937_64& rng, std::size_t n_max, bool saturate) {
  Grid g{n_max + 1, 4, {}, {}};
  g.limbs.assign(g.height * g.stride, 0);
  g.width.resize(g.stride);
  for (std::size_t m = 0; m < g.stride; ++m) g.width[m] = 1 + static_cast<std::uint32_t>((m * 3) / g.stride);
  for (std::size_t m = 0; m < g.stride; ++m) {
    // Keep the top occupied limb small so sums of a few entries cannot overflow.
    for (std::uint32_t k = 0; k + 1 < g.width[m]; ++k) g.limbs[k * g.stride + m] = saturate ? ~0ULL : rng();
    g.limbs[(g.width[m] - 1) * g.stride + m] = rng() >> 40;
  }
  return g;
}

}  // namespace

TEST_CASE("isa names and dispatch control") {
  CHECK(parse_isa("scalar") == Isa::kScalar);
  CHECK(parse_isa("avx2") == Isa::kAvx2);
  CHECK_THROWS_AS(parse_isa("sse9"), DomainError);
  CHECK(isa_supported(Isa::kScalar));
  const Isa original = active_isa();
  set_active_isa(Isa::kScalar);
  CHECK(active_isa() == Isa::kScalar);
  if (!isa_supported(Isa::kAvx2)) CHECK_THROWS_AS(set_active_isa(Isa::kAvx2), DomainError);
  set_active_isa(original);
  MESSAGE("active isa: ", isa_name(active_isa()));
}

TEST_CASE("scalar weighted exponential sum matches an extended-precision reference") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  std::vector<double> w(5001);
  for (auto& v : w) v = dist(rng);
  for (double u : {1e-3, 0.01, 0.5, 3.0}) {
    for (int power = 0; power <= 4; ++power) {
      const double ref = static_cast<double>(reference_sum(w, 5000, u, power));
      CHECK(scalar::exp_weighted_sum(w, 5000, u, power) == doctest::Approx(ref).epsilon(1e-14));
    }
  }
}

#if SQPART_HAVE_X86
TEST_CASE("avx2 weighted exponential sum is equivalent to the scalar kernel") {
  if (!isa_supported(Isa::kAvx2)) return;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  std::vector<double> w(200'001);
  for (auto& v : w) v = dist(rng);
  for (std::size_t t_end : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 1001u, 200'000u}) {
    for (double u : {1e-5, 1e-3, 0.2, 5.0, 600.0}) {
      for (int power = 0; power <= 4; ++power) {
        INFO("t_end=", t_end, " u=", u, " power=", power);
        const double s = scalar::exp_weighted_sum(w, t_end, u, power);
        const double v = avx2::exp_weighted_sum(w, t_end, u, power);
        CHECK(v == doctest::Approx(s).epsilon(1e-13));
        if (t_end <= 1001) {
          const double ref = static_cast<double>(reference_sum(w, t_end, u, power));
          CHECK(v == doctest::Approx(ref).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("avx2 lagged limb addition is equivalent to the scalar kernel") {
  if (!isa_supported(Isa::kAvx2)) return;
  std::mt19937_64 rng(13);
  for (bool saturate : {false, true}) {
    for (std::size_t n_max : {0u, 3u, 4u, 10u, 97u, 512u}) {
      for (std::size_t lag : {1u, 2u, 3u, 4u, 5u, 8u, 31u, 96u}) {
        if (lag > n_max) continue;
        Grid a = random_grid(rng, n_max, saturate);
        Grid b = a;
        const bool ok_a = scalar::add_lagged({a.limbs.data(), a.stride}, lag, n_max, a.width);
        const bool ok_b = avx2::add_lagged({b.limbs.data(), b.stride}, lag, n_max, b.width);
        INFO("n_max=", n_max, " lag=", lag, " saturate=", saturate);
        CHECK(ok_a);
        CHECK(ok_b);
        CHECK(a.limbs == b.limbs);
      }
    }
  }
}

TEST_CASE("both limb kernels report a carry past the top limb") {
  if (!isa_supported(Isa::kAvx2)) return;
  for (std::size_t lag : {1u, 4u}) {
    const std::size_t n_max = 16;
    std::vector<std::uint64_t> limbs(n_max + 1, ~0ULL);
    std::vector<std::uint32_t> width(n_max + 1, 1);
    auto copy = limbs;
    CHECK_FALSE(scalar::add_lagged({limbs.data(), n_max + 1}, lag, n_max, width));
    CHECK_FALSE(avx2::add_lagged({copy.data(), n_max + 1}, lag, n_max, width));
  }
}
#endif

TEST_CASE("scalar lagged addition carries across limbs") {
  // entry[1] = 2^64 - 1, entry[0] = 1; lag 1 gives entry[1] = 2^64 in two limbs.
  const std::size_t stride = 2;
  std::vector<std::uint64_t> limbs{1, ~0ULL, 0, 0};
  std::vector<std::uint32_t> width{2, 2};
  CHECK(scalar::add_lagged({limbs.data(), stride}, 1, 1, width));
  CHECK(limbs == std::vector<std::uint64_t>{1, 0, 0, 1});
}
