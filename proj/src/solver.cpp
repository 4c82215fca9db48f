#include "hopx/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

namespace hopx {
namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// t and sigma_k of the iteration that consumes a dual iterate of this norm.
std::pair<double, double> step_sizes(double lambda_norm, double p,
                                     double sigma_root) {
  if (lambda_norm == 0.0) return {0.0, 0.0};
  const double t = std::pow(lambda_norm, 1.0 / p - 1.0);
  return {t, sigma_root * t};
}

}  // namespace

SolveReport solve_hop(const HopProblem& problem, const SolverConfig& config) {
  config.validate(problem.c.size());
  const Vector& c = problem.c;
  const double p = problem.p;
  const double sigma_root = std::pow(problem.sigma, -1.0 / p);

  Vector lambda;
  switch (config.lambda0_strategy) {
    case Lambda0Strategy::kAuto:
      lambda = c - problem.f.prox(1.0, c);
      break;
    case Lambda0Strategy::kZero:
      lambda = Vector::Zero(c.size());
      break;
    case Lambda0Strategy::kGiven:
      lambda = config.lambda0;
      break;
  }
  if (!lambda.allFinite())
    throw NumericalError("non-finite initial dual iterate");

  SolveReport report;
  Clock::time_point last = Clock::now();
  auto push = [&](int k, const Vector& lam, const Vector& xk) {
    const auto now = Clock::now();
    const auto [t_k, sigma_k] = step_sizes(lam.norm(), p, sigma_root);
    report.trace.push_back({k, lam.norm(), t_k, sigma_k,
                            hop_objective(problem, xk),
                            kkt_residual(problem, xk), ms_between(last, now)});
    last = now;
  };

  Vector x = c - sigma_root * ip_map(lambda, p);
  push(0, lambda, x);

  int k = 0;
  while (k < config.max_iters && !report.converged) {
    ++k;
    double lambda_norm = lambda.norm();
    if (lambda_norm <= config.zero_tol) {
      // λ ≈ 0: either c is stationary (done, exactly), or restart the dual
      // variable the way the auto strategy would.
      Vector r = c - problem.f.prox(1.0, c);
      if (r.norm() <= config.zero_tol) {
        lambda = Vector::Zero(c.size());
        x = c;
        report.converged = true;
        push(k, lambda, x);
        break;
      }
      lambda = std::move(r);
      lambda_norm = lambda.norm();
    }

    const auto [t_k, sigma_k] = step_sizes(lambda_norm, p, sigma_root);
    if (!(sigma_k > 1e-300)) {
      std::ostringstream msg;
      msg << "prox step size underflow (sigma_k = " << sigma_k
          << ") at iteration " << k;
      throw NumericalError(msg.str());
    }
    Vector next = (c - problem.f.prox(sigma_k, c)) / sigma_k;
    if (!next.allFinite())
      throw NumericalError("non-finite dual iterate at iteration " +
                           std::to_string(k));
    x = c - sigma_root * ip_map(next, p);
    if (!x.allFinite())
      throw NumericalError("non-finite primal iterate at iteration " +
                           std::to_string(k));
    report.converged =
        (next - lambda).norm() <= config.tol * std::max(1.0, lambda_norm);
    lambda = std::move(next);
    push(k, lambda, x);
  }

  report.x_final = std::move(x);
  report.lambda_final = std::move(lambda);
  report.iterations = k;
  return report;
}

double kkt_residual(const HopProblem& problem, const Vector& x) {
  if (x.size() != problem.c.size())
    throw std::invalid_argument("x dimension does not match the problem");
  require_finite(x, "x");
  const Vector d = x - problem.c;
  const double r = d.norm();
  const Vector grad_power = problem.sigma * std::pow(r, problem.p - 1.0) * d;
  if (problem.f.is_smooth())
    return (problem.f.subgradient(x) + grad_power).norm();
  return (problem.f.prox(1.0, x - grad_power) - x).norm();
}

ContractionCertificate check_contraction(const SolveReport& report,
                                         const Vector& lambda_star, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (report.trace.empty())
    throw std::invalid_argument("trace is empty");
  require_finite(lambda_star, "lambda_star");

  // Numerical guard rails. Ratios are only meaningful while the denominator
  // log-distance is large against round-off; once an iterate lands within
  // kLandTol log-distance of ‖λ*‖ the theory's λᵏ ≠ λ* assumption is void and
  // subsequent ratio checks are skipped.
  constexpr double kMonoSlack = 1e-10;
  constexpr double kDenomFloor = 1e-5;
  constexpr double kLandTol = 1e-8;
  constexpr double kRatioSlack = 1e-8;

  ContractionCertificate cert;
  cert.factor = 1.0 - 1.0 / p;
  const double L = lambda_star.norm();
  const auto& trace = report.trace;
  const int N = static_cast<int>(trace.size()) - 1;
  std::ostringstream violations;
  int violation_count = 0;
  auto violate = [&](int iter, const std::string& what) {
    violations << (violation_count ? "; " : "") << "iteration " << iter << ": "
               << what;
    ++violation_count;
  };

  if (L == 0.0) {
    // One-step convergence to the zero dual solution: every iterate after the
    // first must already sit at 0 up to round-off.
    cert.side = ContractionSide::kAbove;
    const double noise = 1e-10 * std::max(1.0, trace[0].lambda_norm);
    for (int k = 1; k <= N; ++k)
      if (trace[k].lambda_norm > noise)
        violate(k, "dual norm did not collapse to 0 in one step");
    cert.terminal_error = (report.lambda_final - lambda_star).norm();
    cert.terminal_bound = noise;
    if (violation_count)
      throw VerificationError("contraction check failed: " +
                              violations.str());
    return cert;
  }

  const double L0 = trace[0].lambda_norm;
  const bool above = L0 >= L;
  cert.side = above ? ContractionSide::kAbove : ContractionSide::kBelow;

  bool landed = false;
  for (int k = 1; k <= N; ++k) {
    const double prev = trace[k - 1].lambda_norm;
    const double cur = trace[k].lambda_norm;

    // Norm monotonicity toward ‖λ*‖ without crossing it.
    if (above) {
      if (cur > prev + kMonoSlack) violate(k, "dual norm increased");
      if (cur < L - kMonoSlack) violate(k, "dual norm crossed below the limit");
    } else {
      if (cur < prev - kMonoSlack) violate(k, "dual norm decreased");
      if (cur > L + kMonoSlack) violate(k, "dual norm crossed above the limit");
    }

    // One-step geometric-mean bound.
    const double geo = std::pow(prev, cert.factor) * std::pow(L, 1.0 / p);
    if (above) {
      if (cur > geo + kMonoSlack) violate(k, "one-step upper bound failed");
    } else {
      if (cur < geo - kMonoSlack) violate(k, "one-step lower bound failed");
    }

    if (landed) continue;
    const double d_prev = std::log(std::max(prev, 1e-300) / L);
    const double d_cur = std::log(std::max(cur, 1e-300) / L);
    if (std::abs(d_cur) <= kLandTol) {
      landed = true;
      if (std::abs(d_prev) > kDenomFloor) cert.ratios.push_back(0.0);
      continue;
    }
    if (std::abs(d_prev) <= kDenomFloor) continue;
    const double ratio = d_cur / d_prev;
    cert.ratios.push_back(ratio);
    if (ratio < -kRatioSlack || ratio > cert.factor + kRatioSlack)
      violate(k, "log-ratio outside [0, 1 - 1/p]");
  }

  // Terminal error bound at the final iterate.
  cert.terminal_error = (report.lambda_final - lambda_star).norm();
  const double slack = 1e-8 * std::max(1.0, L);
  if (N >= 1 && L0 > 0.0) {
    const double decay = std::pow(cert.factor, N - 1);
    if (above) {
      cert.terminal_bound = L * (std::exp(decay * std::log(L0 / L)) - 1.0);
    } else {
      cert.terminal_bound =
          cert.factor * L * (std::exp(decay * std::log(L / L0)) - 1.0);
    }
    if (cert.terminal_error > cert.terminal_bound + slack)
      violate(N, "terminal error bound failed");
  } else {
    cert.terminal_bound = cert.terminal_error;
  }

  if (violation_count)
    throw VerificationError("contraction check failed: " + violations.str());
  return cert;
}

std::vector<Vector> run_hoppa(const ProxFunction& f, double sigma, double p,
                              const Vector& x0, int outer_iters,
                              const SolverConfig& inner_config) {
  if (outer_iters < 0)
    throw std::invalid_argument("outer_iters must be nonnegative");
  if (x0.size() != f.dim())
    throw std::invalid_argument("x0 dimension does not match f");
  require_finite(x0, "x0");

  std::vector<Vector> trajectory;
  trajectory.reserve(static_cast<std::size_t>(outer_iters) + 1);
  trajectory.push_back(x0);
  Vector x = x0;
  for (int k = 0; k < outer_iters; ++k) {
    HopProblem sub(f, sigma, p, x);
    x = solve_hop(sub, inner_config).x_final;
    trajectory.push_back(x);
  }
  return trajectory;
}

}  // namespace hopx
