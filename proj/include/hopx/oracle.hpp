#pragma once

#include "hopx/core.hpp"
#include "hopx/functions.hpp"

namespace hopx {

// Reference solution produced by one of the independent oracles. The oracles
// deliberately share no machinery with the production solvers (no ip_map, no
// dual iteration), so agreement with them is evidence rather than tautology.
struct OracleResult {
  Vector x_star;
  Vector lambda_star;   // σ‖x*−c‖^{p−1}(c − x*)
  double t_star = 0.0;  // ‖x* − c‖
  double residual = 0.0;  // kkt_residual at x*
};

// Reference solver for quadratic f: reduces stationarity to the scalar
// equation ‖x(r) − c‖ = r with x(r) = c − (A + σr^{p−1}I)⁻¹(b + Ac), whose
// left side minus r is strictly decreasing with a unique root; brackets by
// doubling and bisects to machine precision. Throws NumericalError if the
// self-checked residual exceeds tol.
OracleResult oracle_quadratic_hop(const QuadraticFunction& q, double sigma,
                                  double p, const Vector& c, double tol);

// Generic reference solver: forward-backward iteration
//   x⁺ = prox(η, x − η∇h(x)),  h(x) = σ/(p+1)·‖x−c‖^{p+1},
// with η halved whenever the objective increases beyond rounding resolution;
// steps within that resolution are accepted so the contraction continues past
// the point where objective differences vanish in double precision. Runs the
// full step budget and returns the final iterate together with its residual,
// which callers inspect to reject weak oracles.
OracleResult oracle_prox_gradient(const HopProblem& problem, const Vector& x0,
                                  long steps, double eta);

}  // namespace hopx
