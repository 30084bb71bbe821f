#include <cmath>
#include <numbers>
#include <string>

#include "sqpart/error.hpp"
#include "sqpart/saddle.hpp"

namespace sqpart::saddle {

namespace {

constexpr int kMaxDoublings = 60;
constexpr double kBisectionHandoff = 1e-3;
constexpr int kMaxNewtonSteps = 60;

}  // namespace

double saddle_scale_guess(double x, double K) {
  if (!(x > 1.0)) throw DomainError("scale guess needs x > 1");
  return std::sqrt(3.0 / K) / std::numbers::pi * std::sqrt(x) * std::pow(2.0 * std::log(x), 0.25);
}

SaddlePoint solve_saddle(const PhiEvaluator& phi, double x, double extra_length) {
  if (!(x >= 10.0) || !std::isfinite(x)) throw DomainError("saddle solve requires x >= 10");
  // g(u) = rho Phi'(rho) - x is strictly decreasing in u = log(1/rho).
  auto g = [&](double u) { return phi.at_u(u, 1, extra_length).value - x; };

  const double u0 = 1.0 / saddle_scale_guess(x, twosquares::landau_ramanujan_K());
  double lo = u0 / 1.25;
  double hi = u0 * 1.25;
  int doublings = 0;
  while (g(lo) <= 0.0) {
    if (++doublings > kMaxDoublings) throw NumericError("saddle bracket did not close (lower end)");
    lo /= 2.0;
  }
  while (g(hi) >= 0.0) {
    if (++doublings > kMaxDoublings) throw NumericError("saddle bracket did not close (upper end)");
    hi *= 2.0;
  }

  while (hi / lo - 1.0 > kBisectionHandoff) {
    const double mid = std::sqrt(lo * hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }

  double u = std::sqrt(lo * hi);
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    const double d1 = phi.at_u(u, 1, extra_length).value - x;
    if (std::fabs(d1) <= kResidualTolerance * x) {
      return {x, std::exp(-u), 1.0 / u, u, std::fabs(d1)};
    }
    d1 > 0.0 ? lo = u : hi = u;
    const double phi2 = phi.at_u(u, 2, extra_length).value;
    double next = u + d1 / phi2;  // dg/du = -Phi_2
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (next == u) break;
    u = next;
  }
  const double d1 = phi.at_u(u, 1, extra_length).value - x;
  if (std::fabs(d1) <= kResidualTolerance * x) return {x, std::exp(-u), 1.0 / u, u, std::fabs(d1)};
  throw NumericError("Newton iteration for the saddle point did not reach the residual tolerance at x = " +
                     std::to_string(x));
}

}  // namespace sqpart::saddle
