#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "licrk/linalg.hpp"

namespace licrk {

enum class Stiffness { nonstiff, stiff };

struct Observable {
  std::string name;
  std::function<double(std::span<const double>)> eval;
};

/// y' = S(y) grad V(y) with V(y) = 1/2 <y, Q y>, Q symmetric and S(y) skew.
class QuadraticODE {
 public:
  virtual ~QuadraticODE() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual DenseMatrix s_matrix(std::span<const double> y) const = 0;
  virtual const DenseMatrix& q_matrix() const = 0;

  Vector grad(std::span<const double> y) const { return q_matrix().apply(y); }
  double invariant(std::span<const double> y) const { return 0.5 * dot(y, grad(y)); }
  /// S(y) grad V(y).
  virtual Vector rhs(std::span<const double> y) const { return s_matrix(y).apply(grad(y)); }

  virtual Vector initial_state() const = 0;
  /// Temporal period of the reference solution.
  virtual double period() const = 0;

  virtual bool has_exact_solution() const { return false; }
  virtual Vector exact_solution(double t) const;

  virtual std::vector<Observable> secondary_observables() const { return {}; }
  virtual Stiffness stiffness_hint() const { return Stiffness::nonstiff; }

  // Stiff problems split y' = L y + g(y) with a linear part whose exponential
  // is cheap. Only meaningful when stiffness_hint() == stiff.
  virtual Vector linear_apply(std::span<const double> y) const;
  virtual Vector exp_linear_apply(double t, std::span<const double> y) const;
};

}  // namespace licrk
