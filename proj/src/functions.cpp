#include "hopx/functions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>

namespace hopx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

QuadraticFunction::QuadraticFunction(Matrix A, Vector b)
    : ProxFunction(b.size()), b_(std::move(b)) {
  if (A.rows() != A.cols() || A.rows() != b_.size())
    throw std::invalid_argument("A must be square and match b");
  require_finite(A, "A");
  require_finite(b_, "b");

  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw std::invalid_argument(
        "A must be symmetric to 1e-10 relative tolerance");

  const Matrix sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of A failed");
  eigenvalues_ = eig.eigenvalues();
  Q_ = eig.eigenvectors();
  const double lam_max = std::max(0.0, eigenvalues_.maxCoeff());
  if (eigenvalues_.minCoeff() < -1e-10 * std::max(1.0, lam_max))
    throw std::invalid_argument("A must be positive semidefinite");
  eigenvalues_ = eigenvalues_.cwiseMax(0.0);
  A_ = Q_ * eigenvalues_.asDiagonal() * Q_.transpose();
  A_ = 0.5 * (A_ + A_.transpose()).eval();
}

double QuadraticFunction::value(const Vector& x) const {
  check_dim(x, "x");
  require_finite(x, "x");
  return 0.5 * x.dot(A_ * x) + b_.dot(x);
}

Vector QuadraticFunction::prox(double t, const Vector& c) const {
  check_t(t);
  check_dim(c, "c");
  require_finite(c, "c");
  if (t == 0.0) return c;
  const Vector v = c - t * b_;
  const Vector z = Q_.transpose() * v;
  const Vector y =
      Q_ * (z.array() / (1.0 + t * eigenvalues_.array())).matrix();
  // (I + tA)y = c - tb must hold; with the spectral path a violation can only
  // mean a backend bug, not ill-conditioning.
  const double residual = (y + t * (A_ * y) - v).norm();
  if (residual > 1e-10 * v.norm())
    throw NumericalError("quadratic prox linear solve missed its residual "
                         "bound");
  return y;
}

Vector QuadraticFunction::subgradient(const Vector& x) const {
  check_dim(x, "x");
  require_finite(x, "x");
  return A_ * x + b_;
}

double QuadraticFunction::conjugate_value(const Vector& lambda) const {
  check_dim(lambda, "lambda");
  require_finite(lambda, "lambda");
  // f*(λ) = ½(λ−b)ᵀA⁺(λ−b) on range(A), +inf outside.
  const Vector z = Q_.transpose() * (lambda - b_);
  const double lam_max = eigenvalues_.maxCoeff();
  const double rank_tol = 1e-12 * std::max(1.0, lam_max);
  const double range_tol = 1e-8 * (1.0 + (lambda - b_).norm());
  double acc = 0.0;
  for (Index i = 0; i < z.size(); ++i) {
    if (eigenvalues_[i] > rank_tol)
      acc += z[i] * z[i] / eigenvalues_[i];
    else if (std::abs(z[i]) > range_tol)
      return kInf;
  }
  return 0.5 * acc;
}

L1Norm::L1Norm(Index dim) : ProxFunction(dim) {}

double L1Norm::value(const Vector& x) const {
  check_dim(x, "x");
  require_finite(x, "x");
  return x.lpNorm<1>();
}

Vector L1Norm::prox(double t, const Vector& c) const {
  check_dim(c, "c");
  return prox_l1(t, c);
}

Vector L1Norm::subgradient(const Vector& x) const {
  check_dim(x, "x");
  require_finite(x, "x");
  return x.array().sign().matrix();
}

double L1Norm::conjugate_value(const Vector& lambda) const {
  check_dim(lambda, "lambda");
  require_finite(lambda, "lambda");
  return lambda.lpNorm<Eigen::Infinity>() <= 1.0 + 1e-12 ? 0.0 : kInf;
}

LinearFunction::LinearFunction(Vector a)
    : ProxFunction(a.size()), a_(std::move(a)) {
  require_finite(a_, "a");
}

double LinearFunction::value(const Vector& x) const {
  check_dim(x, "x");
  require_finite(x, "x");
  return a_.dot(x);
}

Vector LinearFunction::prox(double t, const Vector& c) const {
  check_dim(c, "c");
  return prox_linear(a_, t, c);
}

Vector LinearFunction::subgradient(const Vector& x) const {
  check_dim(x, "x");
  return a_;
}

double LinearFunction::conjugate_value(const Vector& lambda) const {
  check_dim(lambda, "lambda");
  require_finite(lambda, "lambda");
  return (lambda - a_).norm() <= 1e-12 * (1.0 + a_.norm()) ? 0.0 : kInf;
}

PointIndicator::PointIndicator(Vector b)
    : ProxFunction(b.size()), b_(std::move(b)) {
  require_finite(b_, "b");
}

double PointIndicator::value(const Vector& x) const {
  check_dim(x, "x");
  require_finite(x, "x");
  return (x.array() == b_.array()).all() ? 0.0 : kInf;
}

Vector PointIndicator::prox(double t, const Vector& c) const {
  check_dim(c, "c");
  return prox_point(b_, t, c);
}

double PointIndicator::conjugate_value(const Vector& lambda) const {
  check_dim(lambda, "lambda");
  require_finite(lambda, "lambda");
  return b_.dot(lambda);
}

Vector prox_quadratic(const QuadraticFunction& q, double t, const Vector& c) {
  return q.prox(t, c);
}

Vector prox_l1(double t, const Vector& c) {
  if (!(t >= 0.0)) throw std::invalid_argument("prox step t must be >= 0");
  require_finite(c, "c");
  if (t == 0.0) return c;
  return (c.array().sign() * (c.array().abs() - t).max(0.0)).matrix();
}

Vector prox_linear(const Vector& a, double t, const Vector& c) {
  if (!(t >= 0.0)) throw std::invalid_argument("prox step t must be >= 0");
  if (a.size() != c.size())
    throw std::invalid_argument("a and c dimensions differ");
  require_finite(a, "a");
  require_finite(c, "c");
  if (t == 0.0) return c;
  return c - t * a;
}

Vector prox_point(const Vector& b, double t, const Vector& c) {
  if (!(t >= 0.0)) throw std::invalid_argument("prox step t must be >= 0");
  if (b.size() != c.size())
    throw std::invalid_argument("b and c dimensions differ");
  require_finite(b, "b");
  require_finite(c, "c");
  return b;
}

QuadraticFunction logsumexp_instance(const Matrix& a_rows,
                                     const Vector& b_shift, const Vector& c) {
  const Index m = a_rows.rows();
  const Index n = a_rows.cols();
  if (m < 1 || n < 1) throw std::invalid_argument("need m >= 1 and n >= 1");
  if (b_shift.size() != m)
    throw std::invalid_argument("b_shift length must equal the row count");
  if (c.size() != n)
    throw std::invalid_argument("c length must equal the column count");
  require_finite(a_rows, "a_rows");
  require_finite(b_shift, "b_shift");
  require_finite(c, "c");

  // Stabilized softmax weights at c.
  Vector s = a_rows * c - b_shift;
  const double s_max = s.maxCoeff();
  Vector w = (s.array() - s_max).exp();
  w /= w.sum();

  Vector b = a_rows.transpose() * w;
  const Vector sqrt_w = w.array().sqrt();
  Matrix S = sqrt_w.asDiagonal() * a_rows;
  Matrix A(n, n);
  A.noalias() = S.transpose() * S;
  A.noalias() -= b * b.transpose();
  A = 0.5 * (A + A.transpose()).eval();
  return QuadraticFunction(std::move(A), std::move(b));
}

}  // namespace hopx
