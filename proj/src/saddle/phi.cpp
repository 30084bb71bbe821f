#include <cmath>
#include <numbers>
#include <string>

#include "sqpart/error.hpp"
#include "sqpart/saddle.hpp"
#include "sqpart/simd/kernels.hpp"

namespace sqpart::saddle {

double truncation_length(double X, int m, double extra) {
  return 60.0 + (m + 2) * std::log(X + std::numbers::e) + extra;
}

PhiEvaluator::PhiEvaluator(std::shared_ptr<const twosquares::MembershipTable> table) : table_(std::move(table)) {
  if (!table_) throw DomainError("PhiEvaluator needs a membership table");
  const std::uint64_t limit = table_->limit();
  std::vector<std::uint64_t> sigma(limit + 1, 0);
  for (std::uint64_t l : table_->members()) {
    for (std::uint64_t t = l; t <= limit; t += l) sigma[t] += l;
  }
  weight_.assign(limit + 1, 0.0);
  for (std::uint64_t t = 1; t <= limit; ++t) weight_[t] = static_cast<double>(sigma[t]) / static_cast<double>(t);
}

PhiEvaluator PhiEvaluator::for_scale(double X_max, double extra_length) {
  if (!(X_max > 0.0) || !std::isfinite(X_max)) throw DomainError("scale must be positive and finite");
  const double span = X_max * truncation_length(X_max, kMaxOrder, extra_length);
  const auto limit = static_cast<std::uint64_t>(std::ceil(span)) + 2;
  return PhiEvaluator(std::make_shared<const twosquares::MembershipTable>(
      twosquares::MembershipTable::sieve(std::max<std::uint64_t>(limit, 4096))));
}

PhiEvaluator PhiEvaluator::for_saddle(double x_max, double extra_length) {
  // The solver's starting bracket reaches X = 1.25 X0 and the solution sits within a few
  // percent of X0 for x >= 10; 3 X0 leaves room for one bracket expansion.
  const double X0 = saddle_scale_guess(std::max(x_max, 10.0), twosquares::landau_ramanujan_K());
  return for_scale(3.0 * X0, extra_length);
}

PhiValue PhiEvaluator::at_u(double u, int m, double extra_length) const {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("u = log(1/rho) must be positive and finite");
  if (m < 0 || m > kMaxOrder) throw DomainError("operator order must lie in [0, 4]");
  const double X = 1.0 / u;
  const double L = truncation_length(X, m, extra_length);
  const double span = std::floor(X * L);
  if (span > static_cast<double>(limit())) {
    throw ResourceError("membership table limit " + std::to_string(limit()) + " too small for truncation at " +
                        std::to_string(static_cast<std::uint64_t>(span)));
  }
  const std::size_t t_end = std::max<std::size_t>(1, static_cast<std::size_t>(span));

  PhiValue out;
  out.m = m;
  out.rho = std::exp(-u);
  out.value = simd::exp_weighted_sum(weight_, t_end, u, m);
  // Terms are at most t^(m+1) e^(-t/X) (sigma_S(t)/t <= 1 + ln t <= t), decreasing beyond
  // (m+1) X < X L; comparison with the integral and Gamma(a, L) <= 2 L^(a-1) e^-L gives:
  const double head = std::pow(static_cast<double>(t_end) + 1.0, m + 1);
  const double integral = 2.0 * std::pow(X, m + 2) * std::pow(L, m + 1);
  out.tail_bound = (head + integral) * std::exp(-L);
  return out;
}

PhiValue PhiEvaluator::at_rho(double rho, int m, double extra_length) const {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0, 1)");
  PhiValue v = at_u(-std::log(rho), m, extra_length);
  v.rho = rho;
  return v;
}

}  // namespace sqpart::saddle
