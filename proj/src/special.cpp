#include "licrk/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "licrk/errors.hpp"

namespace licrk {

namespace {

void check_parameter(double m) {
  if (!(m >= 0.0 && m < 1.0))
    throw Error(Errc::domain, "elliptic parameter m must lie in [0, 1)");
}

}  // namespace

double elliptic_k(double m) {
  check_parameter(m);
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

JacobiValues jacobi_elliptic(double u, double m) {
  check_parameter(m);
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};

  // sn and cn have period 4K; reduce so the phase stays small.
  const double period = 4.0 * elliptic_k(m);
  u -= period * std::nearbyint(u / period);

  constexpr int max_levels = 32;
  std::array<double, max_levels + 1> a{};
  std::array<double, max_levels + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < max_levels) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // cos(phi_0) / cos(phi_1 - phi_0) is 0/0 at odd multiples of K
  const double dn = std::sqrt(1.0 - m * sn * sn);
  return {sn, cn, dn};
}

double solve_kepler_equation(double mean_anomaly, double e, double tol) {
  if (!(e >= 0.0 && e < 1.0)) throw Error(Errc::domain, "eccentricity must lie in [0, 1)");
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "solve_kepler_equation: tol must be positive");
  // Solve for the reduced anomaly and add the whole turns back.
  const double two_pi = 2.0 * std::numbers::pi;
  const double turns = std::nearbyint(mean_anomaly / two_pi);
  const double m = mean_anomaly - turns * two_pi;
  double ecc = m;
  for (int it = 0; it < 64; ++it) {
    const double f = ecc - e * std::sin(ecc) - m;
    if (std::abs(f) <= tol) return ecc + turns * two_pi;
    const double step = f / (1.0 - e * std::cos(ecc));
    ecc -= step;
    // at the roundoff floor the residual cannot shrink further
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(ecc))) return ecc + turns * two_pi;
  }
  throw Error(Errc::no_convergence, "solve_kepler_equation: Newton did not converge");
}

}  // namespace licrk
