#pragma once

#include <string>

#include "hopx/types.hpp"

namespace hopx {

// A closed proper convex function with an exact classical proximal operator
//   prox(t, c) = argmin_y f(y) + ‖y − c‖²/(2t),  defined for every t ≥ 0,
// with prox(0, c) = c. Implementations are immutable after construction
// (including cached factorizations) and safe for concurrent calls.
class ProxFunction {
 public:
  explicit ProxFunction(Index dim);
  virtual ~ProxFunction() = default;

  ProxFunction(const ProxFunction&) = default;
  ProxFunction& operator=(const ProxFunction&) = delete;

  Index dim() const { return dim_; }

  // f(x); indicator-type functions return +infinity outside their domain.
  virtual double value(const Vector& x) const = 0;

  virtual Vector prox(double t, const Vector& c) const = 0;

  // Capability flags.
  virtual bool is_smooth() const { return false; }
  virtual bool has_subgradient() const { return false; }
  virtual bool has_conjugate_value() const { return false; }

  // Some element of ∂f(x); the gradient when is_smooth().
  virtual Vector subgradient(const Vector& x) const;

  // f*(λ) = sup_x xᵀλ − f(x); +infinity outside dom f*.
  virtual double conjugate_value(const Vector& lambda) const;

  virtual std::string kind() const = 0;

 protected:
  void check_dim(const Vector& v, const char* what) const;
  static void check_t(double t);

 private:
  Index dim_;
};

}  // namespace hopx
