#include <cmath>
#include <numbers>
#include <string>

#include "sqpart/error.hpp"
#include "sqpart/saddle.hpp"

namespace sqpart::saddle {

namespace {

void require_asymptotic(std::uint64_t n) {
  if (n < kAsymptoticMinN) throw DomainError("n below asymptotic regime (need n >= 100)");
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kMain:
      return "main";
    case Method::kSimple:
      return "simple";
    case Method::kDifference:
      return "difference";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "main") return Method::kMain;
  if (name == "simple") return Method::kSimple;
  if (name == "difference") return Method::kDifference;
  throw DomainError("unknown estimate method '" + std::string(name) + "'");
}

LogEstimate main_estimate_log(const PhiEvaluator& phi, std::uint64_t n, double extra_length) {
  require_asymptotic(n);
  const SaddlePoint sp = solve_saddle(phi, static_cast<double>(n), extra_length);
  const double phi0 = phi.at_u(sp.u, 0, extra_length).value;
  const double phi2 = phi.at_u(sp.u, 2, extra_length).value;
  if (!(phi2 > 0.0)) throw NumericError("second log-derivative is not positive at the saddle");
  const double log_value = static_cast<double>(n) * sp.u + phi0 - 0.5 * std::log(2.0 * std::numbers::pi * phi2);
  if (!std::isfinite(log_value)) throw NumericError("main estimate is not finite");
  return {n, log_value, Method::kMain, sp};
}

LogEstimate simple_estimate_log(std::uint64_t n, double K) {
  require_asymptotic(n);
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  const double exponent = std::pow(2.0, 0.75) * std::numbers::pi * std::sqrt(K / 3.0) * std::sqrt(nd) *
                          std::pow(log_n, -0.25);
  const double prefactor = std::log(std::pow(2.0, -9.0 / 8.0) * std::pow(K / 3.0, 0.25));
  const double log_value = exponent + prefactor - 0.75 * log_n - 0.125 * std::log(log_n);
  return {n, log_value, Method::kSimple, std::nullopt};
}

LogEstimate difference_estimate_log(const PhiEvaluator& phi, std::uint64_t n, double extra_length) {
  LogEstimate est = main_estimate_log(phi, n, extra_length);
  est.log_value += std::log(est.saddle->u);
  est.method = Method::kDifference;
  return est;
}

double prop_p_reference(double x, PropP which, int m, double K) {
  if (!(x >= std::exp(std::numbers::e))) throw DomainError("closed-form saddle references need x >= e^e");
  const double log_x = std::log(x);
  if (which == PropP::kP3) {
    if (m < 1) throw DomainError("p3 reference needs m >= 1");
    const double base = 3.0 * std::sqrt(2.0 * log_x) / (K * std::numbers::pi * std::numbers::pi);
    return std::pow(x, (m + 1) / 2.0) * std::pow(base, (m - 1) / 2.0) * std::tgamma(m + 1.0);
  }
  return std::numbers::pi * std::sqrt(K / 3.0) * std::sqrt(x) * std::pow(2.0 * log_x, -0.25) *
         (1.0 - std::log(log_x) / (8.0 * log_x));
}

double lemma_deriv_reference(double X, int m, double K) {
  if (!(X >= 10.0) || !std::isfinite(X)) throw DomainError("log-derivative reference needs X >= 10");
  if (m < 0 || m > kMaxOrder) throw DomainError("operator order must lie in [0, 4]");
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  return K * zeta2 * std::tgamma(m + 1.0) * std::pow(X, m + 1) / std::sqrt(std::log(X));
}

double growth_ratio_reference(double n, double K) {
  if (!(n > 1.0)) throw DomainError("growth reference needs n > 1");
  return std::numbers::pi * std::sqrt(K / 3.0) / std::sqrt(n) * std::pow(2.0 * std::log(n), -0.25);
}

}  // namespace sqpart::saddle
