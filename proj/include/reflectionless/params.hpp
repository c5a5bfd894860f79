#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace reflectionless {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Raised when an operation is called outside its mathematical domain
/// (k = 0 for continuum states, d = 0 at a sign jump, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two routes that must agree do not (negative defect, ...).
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixes H = -d^2/dx^2 - 2 kappa^2 sech^2(kappa x) in units hbar = 2m = 1.
///
/// `tol` is the default quadrature tolerance used by routines that do not
/// take an explicit QuadratureSpec. `k_eps` (relative to kappa) is the seam
/// below which removable singularities switch to their series branch.
struct PotentialParams {
  double kappa = 1.0;
  double tol = 1e-6;
  double k_eps = 1e-4;

  PotentialParams() = default;
  explicit PotentialParams(double kappa_, double tol_ = 1e-6, double k_eps_ = 1e-4)
      : kappa(kappa_), tol(tol_), k_eps(k_eps_) {
    validate();
  }

  void validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw std::invalid_argument("kappa must be positive and finite, got " + std::to_string(kappa));
    if (!(tol > 0.0 && tol < 1e-3))
      throw std::invalid_argument("tol must lie in (0, 1e-3), got " + std::to_string(tol));
    if (!(k_eps > 0.0 && k_eps < 1e-2))
      throw std::invalid_argument("k_eps must lie in (0, 1e-2), got " + std::to_string(k_eps));
  }
};

namespace detail {

inline double sech(double u) {
  // cosh overflows past ~710; sech is exactly representable as 0 there anyway
  return 1.0 / std::cosh(u);
}

inline void require_nonzero_k(double k, const char* what) {
  if (k == 0.0) throw DomainError(std::string(what) + ": k = 0 is not a continuum label");
  if (!std::isfinite(k)) throw DomainError(std::string(what) + ": k must be finite");
}

inline void require_positive_k(double k, const char* what) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError(std::string(what) + ": parity states are labelled by k > 0");
}

}  // namespace detail
}  // namespace reflectionless
