#pragma once

#include <vector>

#include "hopx/core.hpp"

namespace hopx {

// Dual fixed-point iteration computing the pth-order prox of f/σ at c:
//   tᵏ = ‖λᵏ‖^{1/p−1} (0 when λᵏ = 0),  σᵏ = σ^{−1/p}·tᵏ,
//   λᵏ⁺¹ = (c − prox(σᵏ, c)) / σᵏ,      xᵏ⁺¹ = c − σ^{−1/p}·ip_map(λᵏ⁺¹, p).
// When ‖λᵏ‖ ≤ zero_tol the stationarity of c is tested directly: if
// ‖c − prox(1, c)‖ ≤ zero_tol the optimum is x = c (assigned exactly) with
// λ = 0; otherwise the iteration restarts from λ = c − prox(1, c).
// Stops when ‖λᵏ⁺¹ − λᵏ‖ ≤ tol·max(1, ‖λᵏ‖) or at max_iters.
SolveReport solve_hop(const HopProblem& problem, const SolverConfig& config);

// Stationarity residual: ‖∇f(x) + σ‖x−c‖^{p−1}(x−c)‖ for smooth f, otherwise
// the prox fixed-point residual ‖prox(1, x − σ‖x−c‖^{p−1}(x−c)) − x‖.
double kkt_residual(const HopProblem& problem, const Vector& x);

enum class ContractionSide { kAbove, kBelow };

// Per-trace verification that the dual norms contract geometrically toward
// ‖λ*‖ with factor 1 − 1/p: recorded ratios are
//   rᵏ = ln(‖λᵏ‖/‖λ*‖) / ln(‖λᵏ⁻¹‖/‖λ*‖) ∈ [0, 1 − 1/p] up to round-off.
struct ContractionCertificate {
  ContractionSide side = ContractionSide::kAbove;
  double factor = 0.0;           // 1 − 1/p
  std::vector<double> ratios;    // one per recorded step
  double terminal_error = 0.0;   // ‖λ_N − λ*‖
  double terminal_bound = 0.0;   // theoretical bound on the terminal error
};

// Verifies, against an independently computed λ*:
//  (i) ‖λᵏ‖ is monotone toward ‖λ*‖ and never crosses it (side-dependent),
// (ii) the one-step bound ‖λᵏ⁺¹‖ ≶ ‖λᵏ‖^{1−1/p}·‖λ*‖^{1/p},
// (iii) per-step log-ratios ≤ 1 − 1/p,
// (iv) the terminal error bound at the final iterate.
// Throws VerificationError listing every violated iteration.
ContractionCertificate check_contraction(const SolveReport& report,
                                         const Vector& lambda_star, double p);

// Outer proximal-point driver: x^{k+1} = pth-order prox of f/σ at xᵏ, realized
// through solve_hop. Returns the trajectory [x0, x1, ..., x_outer].
std::vector<Vector> run_hoppa(const ProxFunction& f, double sigma, double p,
                              const Vector& x0, int outer_iters,
                              const SolverConfig& inner_config);

}  // namespace hopx
