#pragma once

#include "hopx/prox_function.hpp"
#include "hopx/types.hpp"

namespace hopx {

// Data of the pth-order proximal problem
//   minimize_x  F(x) = f(x) + σ/(p+1)·‖x − c‖^{p+1},   σ > 0, p ≥ 1.
// Holds the function by reference; the caller keeps f alive.
struct HopProblem {
  HopProblem(const ProxFunction& f, double sigma, double p, Vector c);

  const ProxFunction& f;
  double sigma;
  double p;
  Vector c;
};

// x / ‖x‖^{1−1/p} for x ≠ 0, the zero vector for x = 0. The image norm is
// ‖x‖^{1/p}; for p = 1 this is the identity.
Vector ip_map(const Vector& x, double p);

// F(x) = f(x) + σ/(p+1)·‖x−c‖^{p+1}; +infinity propagates from f.
double hop_objective(const HopProblem& problem, const Vector& x);

// Conjugate of the power term f₂(x) = σ/(p+1)·‖x−c‖^{p+1}:
//   f₂*(λ) = λᵀc + σ^{−1/p}/(1+1/p)·‖λ‖^{1+1/p}.
double power_norm_conjugate(const Vector& lambda, double sigma, double p,
                            const Vector& c);

// D(λ) = f*(λ) − λᵀc + σ^{−1/p}/(1+1/p)·‖λ‖^{1+1/p}. The dual problem is the
// minimization of D; its optimal value is the negative of the primal optimum.
double dual_objective(const HopProblem& problem, const Vector& lambda);

// F(x) + D(λ): nonnegative up to round-off for any pair where both sides are
// finite, ~0 at an optimal pair.
double weak_duality_gap(const HopProblem& problem, const Vector& x,
                        const Vector& lambda);

}  // namespace hopx
