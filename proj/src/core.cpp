#include "hopx/core.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hopx {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite())
    throw std::invalid_argument(std::string(what) + " must be finite");
}

void SolverConfig::validate(Index dim) const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(zero_tol >= 0.0))
    throw std::invalid_argument("zero_tol must be nonnegative");
  if (lambda0_strategy == Lambda0Strategy::kGiven) {
    if (lambda0.size() != dim)
      throw std::invalid_argument("lambda0 dimension mismatch");
    require_finite(lambda0, "lambda0");
  }
}

ProxFunction::ProxFunction(Index dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

Vector ProxFunction::subgradient(const Vector&) const {
  throw CapabilityError(kind() + " provides no subgradient");
}

double ProxFunction::conjugate_value(const Vector&) const {
  throw CapabilityError(kind() + " provides no conjugate value");
}

void ProxFunction::check_dim(const Vector& v, const char* what) const {
  if (v.size() != dim_)
    throw std::invalid_argument(std::string(what) + " has dimension " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(dim_));
}

void ProxFunction::check_t(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("prox step t must be >= 0");
}

HopProblem::HopProblem(const ProxFunction& f_in, double sigma_in, double p_in,
                       Vector c_in)
    : f(f_in), sigma(sigma_in), p(p_in), c(std::move(c_in)) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (c.size() != f.dim())
    throw std::invalid_argument("c dimension does not match f");
  require_finite(c, "c");
}

Vector ip_map(const Vector& x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  require_finite(x, "x");
  const double norm = x.norm();
  if (norm == 0.0) return Vector::Zero(x.size());
  return x / std::pow(norm, 1.0 - 1.0 / p);
}

double hop_objective(const HopProblem& problem, const Vector& x) {
  if (x.size() != problem.c.size())
    throw std::invalid_argument("x dimension does not match the problem");
  require_finite(x, "x");
  const double r = (x - problem.c).norm();
  return problem.f.value(x) +
         problem.sigma / (problem.p + 1.0) * std::pow(r, problem.p + 1.0);
}

double power_norm_conjugate(const Vector& lambda, double sigma, double p,
                            const Vector& c) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (lambda.size() != c.size())
    throw std::invalid_argument("lambda and c dimensions differ");
  require_finite(lambda, "lambda");
  require_finite(c, "c");
  const double q = 1.0 + 1.0 / p;
  return lambda.dot(c) +
         std::pow(sigma, -1.0 / p) / q * std::pow(lambda.norm(), q);
}

double dual_objective(const HopProblem& problem, const Vector& lambda) {
  if (!problem.f.has_conjugate_value())
    throw CapabilityError(problem.f.kind() +
                          " provides no conjugate value; dual objective "
                          "unavailable");
  if (lambda.size() != problem.c.size())
    throw std::invalid_argument("lambda dimension does not match the problem");
  require_finite(lambda, "lambda");
  const double q = 1.0 + 1.0 / problem.p;
  return problem.f.conjugate_value(lambda) - lambda.dot(problem.c) +
         std::pow(problem.sigma, -1.0 / problem.p) / q *
             std::pow(lambda.norm(), q);
}

double weak_duality_gap(const HopProblem& problem, const Vector& x,
                        const Vector& lambda) {
  return hop_objective(problem, x) + dual_objective(problem, lambda);
}

}  // namespace hopx
