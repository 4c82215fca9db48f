#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hopx/prox_function.hpp"
#include "hopx/types.hpp"

namespace hopx {

struct BisectionConfig {
  double tol_t = 1e-10;   // stop when bracket width ≤ tol_t·max(1, midpoint)
  int max_iters = 200;
  double tau_init = 1.0;  // starting point of the doubling search
};

// T(t) = t·‖prox(t, c) − c‖, continuous and nondecreasing with T(0) = 0.
double T_eval(const ProxFunction& f, const Vector& c, double t);

// Doubles tau from tau_init until T(tau) ≥ 1/sigma and returns the first such
// tau. Throws StationaritySignal when 0 ∈ ∂f(c) (detected via
// ‖c − prox(1, c)‖ ≤ 1e−14), in which case the minimizer is c and no bracket
// exists; capped at 10⁶ doublings.
double find_bracket(const ProxFunction& f, const Vector& c, double sigma,
                    double tau_init);

// p = 2 specialization: solves T(t) = 1/σ by bisection on the bracket
// [0, find_bracket(...)] and returns x = prox(t_mid, c) at the last midpoint.
// The report's bisection field records midpoints, T values, and bracket
// widths (halved exactly each step).
SolveReport solve_bisection_p2(const ProxFunction& f, const Vector& c,
                               double sigma,
                               const BisectionConfig& config = {});

// Checks the growth sandwich (t2/t1)·T(t1) ≤ T(t2) ≤ (t2/t1)²·T(t1) for every
// ordered pair; returns false and describes the first violation in
// *diagnostic (when given).
bool check_T_sandwich(const ProxFunction& f, const Vector& c,
                      const std::vector<std::pair<double, double>>& pairs,
                      std::string* diagnostic = nullptr);

}  // namespace hopx
