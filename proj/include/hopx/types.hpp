#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopx {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// A numeric routine left its guaranteed-accuracy regime (non-finite iterate,
// linear solve missing its residual bound, step-size underflow, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation asked for an optional capability (conjugate value, subgradient)
// that the supplied function does not provide.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A certified inequality failed inside one of the check_* routines.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 0 is a subgradient of f at c: the minimizer is c itself and no bracket or
// iteration is needed. Thrown by find_bracket; solve paths intercept it.
class StationaritySignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_finite(const Vector& v, const char* what);
void require_finite(const Matrix& m, const char* what);

enum class Lambda0Strategy { kAuto, kZero, kGiven };

struct SolverConfig {
  int max_iters = 200;
  double tol = 1e-12;       // relative fixed-point tolerance on the dual step
  double zero_tol = 0.0;    // threshold below which lambda is treated as 0
  Lambda0Strategy lambda0_strategy = Lambda0Strategy::kAuto;
  Vector lambda0;           // consulted only when lambda0_strategy == kGiven

  void validate(Index dim) const;
};

struct TraceRecord {
  int iter = 0;
  double lambda_norm = 0.0;
  double t_k = 0.0;
  double sigma_k = 0.0;
  double objective = 0.0;
  double kkt_residual = 0.0;
  double elapsed_ms = 0.0;  // wall clock spent on this iteration
};

// Bracket evolution of the p=2 scalar equation T(t) = 1/sigma. The bracket is
// stored as (lower endpoint, width) and the width is halved literally each
// step, so widths[k] == initial_width / 2^(k+1) holds exactly. The endpoints
// after step k are [t_mid[k] - widths[k], t_mid[k]] when T_mid[k] >= 1/sigma
// and [t_mid[k], t_mid[k] + widths[k]] otherwise.
struct BisectionState {
  double tau0 = 0.0;             // final lower endpoint
  double tau1 = 0.0;             // final upper endpoint
  double initial_width = 0.0;    // bracket width before the first halving
  std::vector<double> t_mid;     // midpoint evaluated at each step
  std::vector<double> T_mid;     // T at that midpoint
  std::vector<double> widths;    // bracket width after each step
};

struct SolveReport {
  Vector x_final;
  Vector lambda_final;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRecord> trace;  // trace.size() == iterations + 1
  std::optional<BisectionState> bisection;  // engaged by solve_bisection_p2
};

}  // namespace hopx
