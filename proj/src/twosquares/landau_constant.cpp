#include <cfloat>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "sqpart/error.hpp"
#include "sqpart/twosquares.hpp"

namespace sqpart::twosquares {

namespace {

using Real = long double;

// Q(s) = prod_{p = 3 mod 4} (1 - p^-2s)^-1 satisfies
//   Q(s)^2 = Q(2s) * zeta(2s) (1 - 2^-2s) / L(2s, chi_4),
// so log Q(1) = sum_{k=1..depth} 2^-k log A(2^k) + 2^-depth log Q(2^depth) with
// A(s) = zeta(s) (1 - 2^-s) / L(s, chi_4). The dropped term is below 2^-depth * 3^-(2^(depth+1)).
constexpr int kDepth = 6;
constexpr int kMaxTerms = 60;

// Alternating-series acceleration (Cohen, Rodriguez Villegas, Zagier): for a completely
// monotone sequence a_k the error after n terms is at most 2 a_0 / (3 + sqrt 8)^n.
template <class Term>
Real alternating_sum(int n, Term term) {
  Real d = std::pow(3.0L + std::sqrt(8.0L), static_cast<Real>(n));
  d = (d + 1.0L / d) / 2.0L;
  Real b = -1.0L;
  Real c = -d;
  Real sum = 0.0L;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * term(k);
    const Real kk = static_cast<Real>(k);
    const Real nn = static_cast<Real>(n);
    b = (kk + nn) * (kk - nn) * b / ((kk + 0.5L) * (kk + 1.0L));
  }
  return sum / d;
}

Real series_error(int n) { return 2.0L / std::pow(3.0L + std::sqrt(8.0L), static_cast<Real>(n)); }

Real zeta(Real s, int n) {
  const Real eta = alternating_sum(n, [s](int k) { return std::pow(static_cast<Real>(k + 1), -s); });
  return eta / (1.0L - std::pow(2.0L, 1.0L - s));
}

Real beta(Real s, int n) {
  return alternating_sum(n, [s](int k) { return std::pow(static_cast<Real>(2 * k + 1), -s); });
}

Real rounding_floor() {
  return 256.0L * LDBL_EPSILON + static_cast<Real>(DBL_EPSILON) / 2.0L;
}

Real error_bound(int n) {
  // eta(s) >= eta(2) = pi^2/12 and beta(s) >= beta(2) = 0.9159..., so each log A(2^k) carries
  // at most eps_n (12/pi^2 + 1/0.9159) < 2.31 eps_n; halving through K = Q(1)^(1/2)/sqrt 2
  // with K < 1 and exp(t) - 1 < 1.1 t for small t gives the 1.3 factor.
  const Real truncation = std::ldexp(std::pow(3.0L, -std::ldexp(1.0L, kDepth + 1)), -kDepth);
  return 1.3L * series_error(n) + truncation + rounding_floor();
}

}  // namespace

ConstantApproximation landau_ramanujan_constant_with_terms(int terms) {
  if (terms < 1 || terms > kMaxTerms) {
    throw DomainError("series length must lie in [1, " + std::to_string(kMaxTerms) + "]");
  }
  Real log_q1 = 0.0L;
  for (int k = 1; k <= kDepth; ++k) {
    const Real s = std::ldexp(1.0L, k);
    const Real log_a = std::log(zeta(s, terms)) + std::log1p(-std::pow(2.0L, -s)) - std::log(beta(s, terms));
    log_q1 += std::ldexp(log_a, -k);
  }
  const Real log_k = 0.5L * log_q1 - 0.5L * std::log(2.0L);
  return {static_cast<double>(std::exp(log_k)), static_cast<double>(error_bound(terms)), terms};
}

ConstantApproximation landau_ramanujan_constant(double target_abs_error) {
  if (!(target_abs_error > 0.0 && target_abs_error <= 0.1)) {
    throw DomainError("target error must lie in (0, 0.1]");
  }
  for (int n = 1; n <= kMaxTerms; ++n) {
    if (error_bound(n) <= static_cast<Real>(target_abs_error)) return landau_ramanujan_constant_with_terms(n);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", target_abs_error);
  throw NumericError(std::string("target error ") + buf + " is below the working-precision floor");
}

double landau_ramanujan_K() {
  static const double K = landau_ramanujan_constant_with_terms(kMaxTerms).value;
  return K;
}

double landau_ramanujan_euler_product(std::uint64_t prime_limit) {
  std::vector<bool> composite(prime_limit + 1, false);
  Real log_sum = 0.0L;
  for (std::uint64_t p = 3; p <= prime_limit; p += 2) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= prime_limit; q += 2 * p) composite[q] = true;
    if (p % 4 == 3) {
      const Real pr = static_cast<Real>(p);
      log_sum += std::log1p(-1.0L / (pr * pr));
    }
  }
  return static_cast<double>(std::exp(-0.5L * log_sum) / std::sqrt(2.0L));
}

}  // namespace sqpart::twosquares
