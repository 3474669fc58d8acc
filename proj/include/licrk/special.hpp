#pragma once

namespace licrk {

// Elliptic functions use the parameter m = k^2 throughout; callers holding
// a modulus k pass k * k.

/// Complete elliptic integral of the first kind, K(m) = pi / (2 agm(1, sqrt(1-m))).
double elliptic_k(double m);

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn by the descending Landen (AGM) scheme.
JacobiValues jacobi_elliptic(double u, double m);

/// Eccentric anomaly E with E - e sin E = mean_anomaly, by Newton from E = M.
double solve_kepler_equation(double mean_anomaly, double e, double tol = 1e-14);

}  // namespace licrk
