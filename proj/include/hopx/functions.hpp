#pragma once

#include <string>

#include "hopx/prox_function.hpp"

namespace hopx {

// f(x) = ½xᵀAx + bᵀx with A symmetric positive semidefinite. The spectral
// factorization A = QΛQᵀ is computed once at construction; eigenvalues are
// clamped to ≥ 0 and every operation (value, gradient, prox, conjugate) uses
// the clamped reconstruction, so the object is PSD exactly as advertised.
class QuadraticFunction : public ProxFunction {
 public:
  QuadraticFunction(Matrix A, Vector b);

  double value(const Vector& x) const override;
  Vector prox(double t, const Vector& c) const override;
  bool is_smooth() const override { return true; }
  bool has_subgradient() const override { return true; }
  bool has_conjugate_value() const override { return true; }
  Vector subgradient(const Vector& x) const override;
  double conjugate_value(const Vector& lambda) const override;
  std::string kind() const override { return "quadratic"; }

  const Matrix& matrix() const { return A_; }
  const Vector& linear() const { return b_; }
  const Vector& eigenvalues() const { return eigenvalues_; }

 private:
  Matrix A_;            // PSD reconstruction QΛQᵀ after clamping
  Vector b_;
  Matrix Q_;            // orthonormal eigenvectors
  Vector eigenvalues_;  // ascending, clamped to ≥ 0
};

// f(x) = ‖x‖₁.
class L1Norm : public ProxFunction {
 public:
  explicit L1Norm(Index dim);

  double value(const Vector& x) const override;
  Vector prox(double t, const Vector& c) const override;
  bool has_subgradient() const override { return true; }
  bool has_conjugate_value() const override { return true; }
  Vector subgradient(const Vector& x) const override;
  double conjugate_value(const Vector& lambda) const override;
  std::string kind() const override { return "l1"; }
};

// f(x) = aᵀx.
class LinearFunction : public ProxFunction {
 public:
  explicit LinearFunction(Vector a);

  double value(const Vector& x) const override;
  Vector prox(double t, const Vector& c) const override;
  bool is_smooth() const override { return true; }
  bool has_subgradient() const override { return true; }
  bool has_conjugate_value() const override { return true; }
  Vector subgradient(const Vector& x) const override;
  double conjugate_value(const Vector& lambda) const override;
  std::string kind() const override { return "linear"; }

  const Vector& slope() const { return a_; }

 private:
  Vector a_;
};

// Indicator of the single point {b}: 0 at b, +infinity elsewhere.
class PointIndicator : public ProxFunction {
 public:
  explicit PointIndicator(Vector b);

  double value(const Vector& x) const override;
  Vector prox(double t, const Vector& c) const override;
  bool has_conjugate_value() const override { return true; }
  double conjugate_value(const Vector& lambda) const override;
  std::string kind() const override { return "point"; }

  const Vector& point() const { return b_; }

 private:
  Vector b_;
};

// Free-function prox entry points mirroring the catalog.
Vector prox_quadratic(const QuadraticFunction& q, double t, const Vector& c);
Vector prox_l1(double t, const Vector& c);
Vector prox_linear(const Vector& a, double t, const Vector& c);
// Prox of the point indicator is b for every t (at t = 0 the operator is
// formally ill-posed; b is returned regardless).
Vector prox_point(const Vector& b, double t, const Vector& c);

// Second-order model of g(x) = log Σᵢ exp(aᵢᵀx − bᵢ) at the point c:
// returns the quadratic with A = ∇²g(c), b = ∇g(c), built from numerically
// stabilized softmax weights. A is PSD by construction.
QuadraticFunction logsumexp_instance(const Matrix& a_rows,
                                     const Vector& b_shift, const Vector& c);

}  // namespace hopx
