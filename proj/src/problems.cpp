#include "licrk/problems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "licrk/errors.hpp"
#include "licrk/spectral.hpp"
#include "licrk/special.hpp"

namespace licrk {

Vector QuadraticODE::exact_solution(double) const {
  throw Error(Errc::unsupported, name() + ": no exact solution available");
}

Vector QuadraticODE::linear_apply(std::span<const double>) const {
  throw Error(Errc::unsupported, name() + ": no linear/nonlinear split");
}

Vector QuadraticODE::exp_linear_apply(double, std::span<const double>) const {
  throw Error(Errc::unsupported, name() + ": no linear/nonlinear split");
}

// ---- rigid body -----------------------------------------------------------

namespace {
constexpr double kRigidBodyM = 0.51;
}

RigidBodyProblem::RigidBodyProblem(double alpha, double beta, Vector y0)
    : alpha_(alpha), beta_(beta), y0_(std::move(y0)), q_(DenseMatrix::identity(3)) {
  if (y0_.size() != 3) throw Error(Errc::invalid_argument, "rigid body: state must have 3 entries");
}

RigidBodyProblem reference_rigid_body() {
  const double r = std::sqrt(1.51);
  RigidBodyProblem p(1.0 + 1.0 / r, 1.0 - 0.51 / r, {0.0, 1.0, 1.0});
  p.reference_setup_ = true;
  return p;
}

DenseMatrix RigidBodyProblem::s_matrix(std::span<const double> y) const {
  return DenseMatrix(3, 3,
                     {0.0, alpha_ * y[2], -beta_ * y[1],  //
                      -alpha_ * y[2], 0.0, y[0],          //
                      beta_ * y[1], -y[0], 0.0});
}

Vector RigidBodyProblem::rhs(std::span<const double> y) const {
  return {(alpha_ - beta_) * y[1] * y[2], (1.0 - alpha_) * y[0] * y[2],
          (beta_ - 1.0) * y[0] * y[1]};
}

double RigidBodyProblem::period() const {
  if (!reference_setup_) throw Error(Errc::unsupported, "rigid body: period known only for the reference setup");
  return 4.0 * elliptic_k(kRigidBodyM);
}

Vector RigidBodyProblem::exact_solution(double t) const {
  if (!reference_setup_) return QuadraticODE::exact_solution(t);
  // alpha - beta = sqrt(1.51), 1 - alpha = -1/sqrt(1.51), beta - 1 = -0.51/sqrt(1.51)
  // match sn' = cn dn, cn' = -sn dn, dn' = -m sn cn with m = 0.51.
  const auto j = jacobi_elliptic(t, kRigidBodyM);
  return {std::sqrt(1.51) * j.sn, j.cn, j.dn};
}

double RigidBodyProblem::casimir(std::span<const double> y) const {
  return 0.5 * (y[0] * y[0] + beta_ * y[1] * y[1] + alpha_ * y[2] * y[2]);
}

std::vector<Observable> RigidBodyProblem::secondary_observables() const {
  return {{"I", [this](std::span<const double> y) { return casimir(y); }}};
}

// ---- Kepler ---------------------------------------------------------------

KeplerProblem::KeplerProblem(double e) : e_(e), q_(4, 4) {
  if (!(e >= 0.0 && e < 1.0)) throw Error(Errc::domain, "kepler: eccentricity must lie in [0, 1)");
  // 1/2 <y, Q y> = y1 y4 - y2 y3
  q_(0, 3) = q_(3, 0) = 1.0;
  q_(1, 2) = q_(2, 1) = -1.0;
}

KeplerProblem reference_kepler(double e) { return KeplerProblem(e); }

std::string KeplerProblem::name() const {
  std::ostringstream os;
  os << "kepler:e=" << e_;
  return os.str();
}

namespace {

double inverse_radius_cubed(std::span<const double> y) {
  const double r2 = y[0] * y[0] + y[1] * y[1];
  if (!(r2 >= 1e-12)) throw Error(Errc::domain, "kepler: state too close to the collision set");
  return 1.0 / (r2 * std::sqrt(r2));
}

}  // namespace

DenseMatrix KeplerProblem::s_matrix(std::span<const double> y) const {
  const double w = inverse_radius_cubed(y);
  DenseMatrix s(4, 4);
  s(0, 1) = -1.0;
  s(1, 0) = 1.0;
  s(2, 3) = -w;
  s(3, 2) = w;
  return s;
}

Vector KeplerProblem::rhs(std::span<const double> y) const {
  const double w = inverse_radius_cubed(y);
  return {y[2], y[3], -w * y[0], -w * y[1]};
}

Vector KeplerProblem::initial_state() const {
  return {1.0 - e_, 0.0, 0.0, std::sqrt((1.0 + e_) / (1.0 - e_))};
}

double KeplerProblem::period() const { return 2.0 * std::numbers::pi; }

Vector KeplerProblem::exact_solution(double t) const {
  // unit semi-major axis and mean motion; perihelion at t = 0
  const double ecc = solve_kepler_equation(t, e_);
  const double ce = std::cos(ecc);
  const double se = std::sin(ecc);
  const double w = std::sqrt(1.0 - e_ * e_);
  const double rate = 1.0 / (1.0 - e_ * ce);
  return {ce - e_, w * se, -se * rate, w * ce * rate};
}

std::vector<Observable> KeplerProblem::secondary_observables() const {
  return {{"energy", [](std::span<const double> y) {
             return 0.5 * (y[2] * y[2] + y[3] * y[3]) - 1.0 / std::hypot(y[0], y[1]);
           }}};
}

// ---- KdV ------------------------------------------------------------------

KdVSpectralProblem::KdVSpectralProblem(const Params& p) : p_(p) {
  if (!is_power_of_two(p_.d) || p_.d < 4)
    throw Error(Errc::config, "kdv: grid size must be a power of two >= 4");
  if (!(p_.kappa > 0.0)) throw Error(Errc::config, "kdv: kappa must be positive");
  const double m = p_.k * p_.k;
  // cn^2 has period 2K in its argument
  length_ = 2.0 * elliptic_k(m) / p_.kappa;
  dx_ = length_ / static_cast<double>(p_.d);
  speed_ = 6.0 * p_.u0 + 4.0 * (2.0 * m - 1.0) * p_.kappa * p_.kappa;
  if (speed_ == 0.0) throw Error(Errc::config, "kdv: stationary wave has no temporal period");
  period_ = std::abs(length_ / speed_);

  const std::size_t n = p_.d;
  d1_ = DenseMatrix(n, n);
  d3_ = DenseMatrix(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector c1 = spectral_diff(e, 1, length_);
    const Vector c3 = spectral_diff(e, 3, length_);
    for (std::size_t i = 0; i < n; ++i) {
      d1_(i, j) = c1[i];
      d3_(i, j) = c3[i];
    }
    e[j] = 0.0;
  }
  q_ = dx_ * DenseMatrix::identity(n);
}

KdVSpectralProblem reference_kdv(std::size_t d) {
  return KdVSpectralProblem({d, std::sqrt(0.1), 1.0, 0.0, 0.0});
}

std::string KdVSpectralProblem::name() const { return "kdv:d=" + std::to_string(p_.d); }

Vector KdVSpectralProblem::skew_apply(std::span<const double> v, std::span<const double> w) const {
  const std::size_t n = p_.d;
  const Vector dw = d1_.apply(w);
  Vector vw(n);
  for (std::size_t i = 0; i < n; ++i) vw[i] = v[i] * w[i];
  const Vector dvw = d1_.apply(vw);
  Vector out = d3_.apply(w);
  for (std::size_t i = 0; i < n; ++i) out[i] = -2.0 * (v[i] * dw[i] + dvw[i]) - out[i];
  return out;
}

DenseMatrix KdVSpectralProblem::s_matrix(std::span<const double> y) const {
  // printed operator divided by dx so that S(y) Q y is the KdV right-hand side
  const std::size_t n = p_.d;
  const double scale = 1.0 / dx_;
  DenseMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s(i, j) = scale * (-2.0 * (y[i] * d1_(i, j) + d1_(i, j) * y[j]) - d3_(i, j));
  return s;
}

Vector KdVSpectralProblem::rhs(std::span<const double> y) const { return skew_apply(y, y); }

Vector KdVSpectralProblem::exact_solution(double t) const {
  const double m = p_.k * p_.k;
  const double amp = 2.0 * m * p_.kappa * p_.kappa;
  Vector u(p_.d);
  for (std::size_t j = 0; j < p_.d; ++j) {
    const double arg = p_.kappa * (grid_point(j) - p_.x0 - speed_ * t);
    const double cn = jacobi_elliptic(arg, m).cn;
    u[j] = p_.u0 + amp * cn * cn;
  }
  return u;
}

Vector KdVSpectralProblem::linear_apply(std::span<const double> y) const {
  Vector out = d3_.apply(y);
  for (double& v : out) v = -v;
  return out;
}

Vector KdVSpectralProblem::exp_linear_apply(double t, std::span<const double> y) const {
  return expA_apply(t, y, length_);
}

// ---- ids ------------------------------------------------------------------

namespace {

double parse_number(const std::string& text, const std::string& id) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::config, "malformed problem id '" + id + "'");
}

}  // namespace

std::unique_ptr<QuadraticODE> problem_by_id(const std::string& id) {
  if (id == "euler") return std::make_unique<RigidBodyProblem>(reference_rigid_body());
  if (id.rfind("kepler:e=", 0) == 0) {
    const double e = parse_number(id.substr(9), id);
    if (!(e >= 0.0 && e < 1.0)) throw Error(Errc::config, "kepler eccentricity must lie in [0, 1)");
    return std::make_unique<KeplerProblem>(e);
  }
  if (id == "kepler") return std::make_unique<KeplerProblem>(0.01);
  if (id.rfind("kdv:d=", 0) == 0) {
    const double d = parse_number(id.substr(6), id);
    if (d < 1 || d != std::floor(d)) throw Error(Errc::config, "kdv grid size must be a positive integer");
    return std::make_unique<KdVSpectralProblem>(reference_kdv(static_cast<std::size_t>(d)));
  }
  throw Error(Errc::config, "unknown problem id '" + id + "'");
}

}  // namespace licrk
