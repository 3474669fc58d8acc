#pragma once

#include <memory>
#include <string>

#include "licrk/problem.hpp"

namespace licrk {

/// Euler equations of a free rigid body, H(y) = |y|^2 / 2.
class RigidBodyProblem final : public QuadraticODE {
 public:
  RigidBodyProblem(double alpha, double beta, Vector y0);

  std::string name() const override { return "euler"; }
  std::size_t dim() const override { return 3; }
  DenseMatrix s_matrix(std::span<const double> y) const override;
  const DenseMatrix& q_matrix() const override { return q_; }
  Vector rhs(std::span<const double> y) const override;
  Vector initial_state() const override { return y0_; }
  double period() const override;
  bool has_exact_solution() const override { return reference_setup_; }
  Vector exact_solution(double t) const override;
  std::vector<Observable> secondary_observables() const override;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// (y1^2 + beta y2^2 + alpha y3^2) / 2, the second quadratic invariant.
  double casimir(std::span<const double> y) const;

  friend RigidBodyProblem reference_rigid_body();

 private:
  double alpha_;
  double beta_;
  Vector y0_;
  DenseMatrix q_;
  bool reference_setup_ = false;
};

/// alpha = 1 + 1/sqrt(1.51), beta = 1 - 0.51/sqrt(1.51), y0 = (0, 1, 1);
/// exact solution (sqrt(1.51) sn, cn, dn) with m = 0.51, period 4K(0.51).
RigidBodyProblem reference_rigid_body();

/// Kepler two-body problem in the skew-gradient form with the angular
/// momentum V(y) = y1 y4 - y2 y3 as quadratic invariant.
class KeplerProblem final : public QuadraticODE {
 public:
  explicit KeplerProblem(double e);

  std::string name() const override;
  std::size_t dim() const override { return 4; }
  /// Throws Errc::domain when y1^2 + y2^2 < 1e-12.
  DenseMatrix s_matrix(std::span<const double> y) const override;
  const DenseMatrix& q_matrix() const override { return q_; }
  Vector rhs(std::span<const double> y) const override;
  Vector initial_state() const override;
  double period() const override;
  bool has_exact_solution() const override { return true; }
  Vector exact_solution(double t) const override;
  std::vector<Observable> secondary_observables() const override;

  double eccentricity() const { return e_; }

 private:
  double e_;
  DenseMatrix q_;
};

KeplerProblem reference_kepler(double e);

/// Norm-preserving Fourier-spectral semi-discretisation of
/// u_t + 6 u u_x + u_xxx = 0 on a periodic grid, with a cnoidal reference.
class KdVSpectralProblem final : public QuadraticODE {
 public:
  struct Params {
    std::size_t d = 16;
    double k = 0.0;  // elliptic modulus
    double kappa = 1.0;
    double u0 = 0.0;
    double x0 = 0.0;
  };
  explicit KdVSpectralProblem(const Params& p);

  std::string name() const override;
  std::size_t dim() const override { return p_.d; }
  DenseMatrix s_matrix(std::span<const double> y) const override;
  const DenseMatrix& q_matrix() const override { return q_; }
  Vector rhs(std::span<const double> y) const override;
  Vector initial_state() const override { return exact_solution(0.0); }
  double period() const override { return period_; }
  bool has_exact_solution() const override { return true; }
  Vector exact_solution(double t) const override;
  Stiffness stiffness_hint() const override { return Stiffness::stiff; }
  Vector linear_apply(std::span<const double> y) const override;
  Vector exp_linear_apply(double t, std::span<const double> y) const override;

  /// Skew operator S(v) applied to w, as printed (no grid-weight scaling).
  Vector skew_apply(std::span<const double> v, std::span<const double> w) const;

  double length() const { return length_; }
  double dx() const { return dx_; }
  double wave_speed() const { return speed_; }
  double grid_point(std::size_t j) const { return static_cast<double>(j + 1) * dx_; }

 private:
  Params p_;
  double length_;
  double dx_;
  double speed_;
  double period_;
  DenseMatrix d1_;
  DenseMatrix d3_;
  DenseMatrix q_;
};

/// k = sqrt(0.1), u0 = 0, kappa = 1, x0 = 0. Throws Errc::config when d is
/// not a power of two.
KdVSpectralProblem reference_kdv(std::size_t d);

/// `euler`, `kepler:e=<val>`, `kdv:d=<val>`.
std::unique_ptr<QuadraticODE> problem_by_id(const std::string& id);

}  // namespace licrk
