#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "sqpart/twosquares.hpp"

namespace sqpart::saddle {

/// Highest operator order (rho d/drho)^m supported by the evaluator.
inline constexpr int kMaxOrder = 4;

/// Truncation length L = 60 + (m + 2) ln(X + e) + extra; the Phi sums keep j*l <= X*L.
double truncation_length(double X, int m, double extra = 0.0);

/// Value of (rho d/drho)^m Phi(rho) with a bound on the dropped tail.
struct PhiValue {
  int m = 0;
  double rho = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Evaluates (rho d/drho)^m Phi(rho) = sum_j sum_{l in S} j^(m-1) l^m rho^(j l).
///
/// Grouping by t = j l turns the double sum into sum_t sigma_S(t) t^(m-1) rho^t, where
/// sigma_S(t) is the sum of the divisors of t that lie in S; the evaluator precomputes
/// sigma_S(t) / t once and hands the single sum to the dispatched SIMD kernel. All
/// evaluation methods are const and safe to call concurrently.
class PhiEvaluator {
 public:
  explicit PhiEvaluator(std::shared_ptr<const twosquares::MembershipTable> table);

  /// An evaluator whose table covers every saddle solve with x <= x_max (and the
  /// estimates built on it, including a truncation extension of `extra_length`).
  static PhiEvaluator for_saddle(double x_max, double extra_length = 10.0);
  /// An evaluator covering rho = exp(-1/X) for X <= X_max and all orders m <= kMaxOrder.
  static PhiEvaluator for_scale(double X_max, double extra_length = 10.0);

  /// Evaluation in the variable u = log(1/rho) > 0.
  PhiValue at_u(double u, int m, double extra_length = 0.0) const;
  /// phi_log_derivative: rho in (0, 1), 0 <= m <= kMaxOrder.
  PhiValue at_rho(double rho, int m, double extra_length = 0.0) const;

  std::uint64_t limit() const noexcept { return table_->limit(); }
  const twosquares::MembershipTable& table() const noexcept { return *table_; }

 private:
  std::shared_ptr<const twosquares::MembershipTable> table_;
  std::vector<double> weight_;  // sigma_S(t) / t, t = 0..limit
};

/// Solution of x = rho Phi'(rho); u = log(1/rho) = 1/X.
struct SaddlePoint {
  double x = 0.0;
  double rho = 0.0;
  double X = 0.0;
  double u = 0.0;
  double residual = 0.0;  ///< |rho Phi'(rho) - x| at the returned point
};

inline constexpr double kResidualTolerance = 1e-12;

/// Leading-order scale X0 = pi^-1 sqrt(3/K) x^(1/2) (2 log x)^(1/4).
double saddle_scale_guess(double x, double K);

/// Requires x >= 10. Geometric bracketing in u around 1/X0, bisection to 1e-3 relative,
/// then Newton with (rho d/drho)^2 Phi until the residual is within kResidualTolerance * x.
SaddlePoint solve_saddle(const PhiEvaluator& phi, double x, double extra_length = 0.0);

enum class Method { kMain, kSimple, kDifference };
std::string_view method_name(Method method);
/// Throws DomainError for unknown names.
Method parse_method(std::string_view name);

/// Natural log of a predicted count.
struct LogEstimate {
  std::uint64_t n = 0;
  double log_value = 0.0;
  Method method = Method::kMain;
  std::optional<SaddlePoint> saddle;
};

inline constexpr std::uint64_t kAsymptoticMinN = 100;

/// n u + Phi(rho) - (1/2) log(2 pi Phi_2) at the saddle x = n.
LogEstimate main_estimate_log(const PhiEvaluator& phi, std::uint64_t n, double extra_length = 0.0);

/// Closed form without the o(1) inside the exponent; carries no saddle point.
LogEstimate simple_estimate_log(std::uint64_t n, double K);

/// Main estimate plus log(1/X): the prediction for p(n + 1) - p(n).
LogEstimate difference_estimate_log(const PhiEvaluator& phi, std::uint64_t n, double extra_length = 0.0);

enum class PropP { kP1, kP2, kP3 };

/// Closed-form right-hand sides: p1 / p2 give pi sqrt(K/3) x^(1/2) (2 log x)^(-1/4)
/// (1 - log log x / (8 log x)); p3 gives x^((m+1)/2) (3 sqrt(2 log x) / (K pi^2))^((m-1)/2) m!.
/// Requires x >= e^e, and m >= 1 for p3.
double prop_p_reference(double x, PropP which, int m, double K);

/// K zeta(2) Gamma(m + 1) X^(m+1) / sqrt(log X); X >= 10, 0 <= m <= kMaxOrder.
double lemma_deriv_reference(double X, int m, double K);

/// pi sqrt(K/3) n^(-1/2) (2 log n)^(-1/4), the leading growth ratio (p(n+1) - p(n)) / p(n).
double growth_ratio_reference(double n, double K);

}  // namespace sqpart::saddle
