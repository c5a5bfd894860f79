#pragma once

// Closed-form Fourier integrals of sech^2, tanh and the Lorentzian
// 1/(k^2 + kappa^2). Quadrature cross-checks live with the callers; nothing
// here integrates numerically.

#include <cmath>

#include "reflectionless/params.hpp"

namespace reflectionless {

/// q / sinh(pi q / (2 kappa)), with the removable q -> 0 limit 2 kappa / pi
/// taken from its Taylor series when |q| < k_eps kappa.
inline double sinc_sinh(double q, const PotentialParams& p) {
  const double u = pi * q / (2.0 * p.kappa);
  if (std::abs(q) < p.k_eps * p.kappa) {
    const double u2 = u * u;
    return (2.0 * p.kappa / pi) * (1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0);
  }
  return q / std::sinh(u);
}

/// I1(k) = int sech^2(kappa x) e^{ikx} dx = (pi k / kappa^2) / sinh(pi k / 2 kappa).
/// Even in k; the k -> 0 value is exactly 2 / kappa.
inline double ft_sech2(double k, const PotentialParams& p) {
  return pi / (p.kappa * p.kappa) * sinc_sinh(k, p);
}

/// I2(k) = PV int tanh(kappa x) e^{ikx} dx = (i pi / kappa) / sinh(pi k / 2 kappa).
inline cplx ft_tanh(double k, const PotentialParams& p) {
  if (k == 0.0) throw DomainError("ft_tanh: the principal-value transform is singular at k = 0");
  return cplx(0.0, pi / (p.kappa * std::sinh(pi * k / (2.0 * p.kappa))));
}

/// int e^{ikd} / (k^2 + kappa^2) dk / 2pi = e^{-kappa |d|} / (2 kappa).
inline double lorentzian_ft(double d, const PotentialParams& p) {
  return std::exp(-p.kappa * std::abs(d)) / (2.0 * p.kappa);
}

/// int i k e^{ik(y-x)} / (k^2 + kappa^2) dk / 2pi as a function of the
/// separation d = x - y: (sgn(d) / 2) e^{-kappa |d|}. Undefined at d = 0.
inline double lorentzian_ft_derivative(double d, const PotentialParams& p) {
  if (d == 0.0) throw DomainError("lorentzian_ft_derivative: sign jump at d = 0");
  return std::copysign(0.5, d) * std::exp(-p.kappa * std::abs(d));
}

}  // namespace reflectionless
