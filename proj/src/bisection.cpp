#include "hopx/bisection.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hopx/core.hpp"
#include "hopx/solver.hpp"

namespace hopx {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kStationaryTol = 1e-14;
constexpr long kMaxDoublings = 1000000;

}  // namespace

double T_eval(const ProxFunction& f, const Vector& c, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (c.size() != f.dim())
    throw std::invalid_argument("c dimension does not match f");
  require_finite(c, "c");
  if (t == 0.0) return 0.0;
  return t * (f.prox(t, c) - c).norm();
}

double find_bracket(const ProxFunction& f, const Vector& c, double sigma,
                    double tau_init) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(tau_init > 0.0))
    throw std::invalid_argument("tau_init must be positive");
  if ((c - f.prox(1.0, c)).norm() <= kStationaryTol)
    throw StationaritySignal(
        "0 is a subgradient of f at c; the minimizer is c and no bracket "
        "exists");
  const double target = 1.0 / sigma;
  double tau = tau_init;
  for (long i = 0; i < kMaxDoublings; ++i) {
    if (T_eval(f, c, tau) >= target) return tau;
    tau *= 2.0;
    if (!std::isfinite(tau)) break;
  }
  throw NumericalError("doubling search failed to reach T(tau) >= 1/sigma");
}

SolveReport solve_bisection_p2(const ProxFunction& f, const Vector& c,
                               double sigma, const BisectionConfig& config) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(config.tol_t > 0.0))
    throw std::invalid_argument("tol_t must be positive");
  if (config.max_iters < 1)
    throw std::invalid_argument("max_iters must be >= 1");
  if (c.size() != f.dim())
    throw std::invalid_argument("c dimension does not match f");
  require_finite(c, "c");

  const HopProblem problem(f, sigma, 2.0, c);
  SolveReport report;
  BisectionState& state = report.bisection.emplace();

  Clock::time_point last = Clock::now();
  auto push = [&](int k, const Vector& xk, double t_point, double width) {
    const auto now = Clock::now();
    const double lambda_norm = sigma * (xk - c).squaredNorm();
    report.trace.push_back(
        {k, lambda_norm, t_point, width, hop_objective(problem, xk),
         kkt_residual(problem, xk),
         std::chrono::duration<double, std::milli>(now - last).count()});
    last = now;
  };

  if ((c - f.prox(1.0, c)).norm() <= kStationaryTol) {
    report.x_final = c;
    report.lambda_final = Vector::Zero(c.size());
    report.converged = true;
    report.iterations = 0;
    push(0, c, 0.0, 0.0);
    return report;
  }

  const double hi = find_bracket(f, c, sigma, config.tau_init);
  const double target = 1.0 / sigma;
  double lo = 0.0;
  double width = hi;
  state.initial_width = width;

  // Row 0 evaluates the upper endpoint, the first point known to satisfy
  // T ≥ 1/σ; its distance to the root is at most the full initial width.
  Vector x = f.prox(hi, c);
  double t_point = hi;
  push(0, x, t_point, width);

  int k = 0;
  while (k < config.max_iters) {
    ++k;
    width *= 0.5;  // exact in IEEE arithmetic
    t_point = lo + width;
    x = f.prox(t_point, c);
    const double T_m = t_point * (x - c).norm();
    if (T_m < target) lo = t_point;
    state.t_mid.push_back(t_point);
    state.T_mid.push_back(T_m);
    state.widths.push_back(width);
    push(k, x, t_point, width);
    if (width <= config.tol_t * std::max(1.0, t_point)) {
      report.converged = true;
      break;
    }
  }

  state.tau0 = lo;
  state.tau1 = lo + width;
  report.x_final = std::move(x);
  const Vector d = c - report.x_final;
  report.lambda_final = sigma * d.norm() * d;
  report.iterations = k;
  return report;
}

bool check_T_sandwich(const ProxFunction& f, const Vector& c,
                      const std::vector<std::pair<double, double>>& pairs,
                      std::string* diagnostic) {
  constexpr double kSlack = 1e-9;
  for (const auto& [t1, t2] : pairs) {
    if (!(t1 > 0.0) || !(t2 >= t1))
      throw std::invalid_argument("pairs must satisfy 0 < t1 <= t2");
    const double T1 = T_eval(f, c, t1);
    const double T2 = T_eval(f, c, t2);
    const double ratio = t2 / t1;
    const bool lower_ok = ratio * T1 <= T2 + kSlack;
    const bool upper_ok = T2 <= ratio * ratio * T1 + kSlack * ratio * ratio;
    if (!lower_ok || !upper_ok) {
      if (diagnostic) {
        std::ostringstream msg;
        msg << "pair (" << t1 << ", " << t2 << "): T(t1) = " << T1
            << ", T(t2) = " << T2 << " violates the "
            << (lower_ok ? "quadratic upper" : "linear lower") << " bound";
        *diagnostic = msg.str();
      }
      return false;
    }
  }
  if (diagnostic) diagnostic->clear();
  return true;
}

}  // namespace hopx
