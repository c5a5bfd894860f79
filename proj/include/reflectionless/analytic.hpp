#pragma once

// Closed-form spectrum of the single-bound-state reflectionless well
//   H = -d^2/dx^2 - 2 kappa^2 sech^2(kappa x)      (hbar = 2m = 1)
// built from the factorization H + kappa^2 = a^dagger a with
//   a = -i d/dx - i kappa tanh(kappa x),  a^dagger = -i d/dx + i kappa tanh(kappa x).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "reflectionless/params.hpp"

namespace reflectionless {

/// Value and first derivative of a wavefunction at one point.
struct Sample {
  cplx value;
  cplx derivative;
};

/// Type-erased differentiable function x -> (f(x), f'(x)).
/// The operator templates below accept any callable with this signature;
/// this alias is what gets stored in containers and passed across the CLI.
using DifferentiableFn = std::function<Sample(double)>;

inline double potential_v(double x, const PotentialParams& p) {
  const double s = detail::sech(p.kappa * x);
  return -2.0 * p.kappa * p.kappa * s * s;
}

inline double bound_energy(const PotentialParams& p) { return -p.kappa * p.kappa; }

inline double psi0(double x, const PotentialParams& p) {
  return std::sqrt(p.kappa / 2.0) * detail::sech(p.kappa * x);
}

inline double psi0_derivative(double x, const PotentialParams& p) {
  return -p.kappa * std::tanh(p.kappa * x) * psi0(x, p);
}

/// phi_k = a^dagger |k>, i.e. e^{ikx}(k + i kappa tanh kappa x)/sqrt(2 pi).
inline cplx phi_unnormalized(double k, double x, const PotentialParams& p) {
  detail::require_nonzero_k(k, "phi_unnormalized");
  const double t = std::tanh(p.kappa * x);
  return std::polar(1.0 / std::sqrt(2.0 * pi), k * x) * cplx(k, p.kappa * t);
}

inline cplx phi_unnormalized_derivative(double k, double x, const PotentialParams& p) {
  detail::require_nonzero_k(k, "phi_unnormalized_derivative");
  const double kap = p.kappa;
  const double t = std::tanh(kap * x);
  const double s = detail::sech(kap * x);
  // d/dx [e^{ikx}(k + i kap t)] = e^{ikx}(i k^2 - k kap t + i kap^2 s^2)
  return std::polar(1.0 / std::sqrt(2.0 * pi), k * x) * cplx(-k * kap * t, k * k + kap * kap * s * s);
}

/// Delta-normalized continuum state psi_k = phi_k / (kappa + i k).
inline cplx psi_k(double k, double x, const PotentialParams& p) {
  return phi_unnormalized(k, x, p) / cplx(p.kappa, k);
}

inline cplx psi_k_derivative(double k, double x, const PotentialParams& p) {
  return phi_unnormalized_derivative(k, x, p) / cplx(p.kappa, k);
}

/// Ratio of the x -> +inf to x -> -inf plane-wave coefficients of psi_k.
inline cplx transmission_amplitude(double k, const PotentialParams& p) {
  detail::require_nonzero_k(k, "transmission_amplitude");
  return cplx(k, p.kappa) / cplx(k, -p.kappa);
}

/// (psi_k(x) + psi_k(-x)) / sqrt(2), k > 0.
inline cplx parity_even(double k, double x, const PotentialParams& p) {
  detail::require_positive_k(k, "parity_even");
  const double kap = p.kappa;
  const double re = k * std::cos(k * x) - kap * std::sin(k * x) * std::tanh(kap * x);
  return re / (std::sqrt(pi) * cplx(kap, k));
}

/// (psi_k(x) - psi_k(-x)) / sqrt(2), k > 0.
inline cplx parity_odd(double k, double x, const PotentialParams& p) {
  detail::require_positive_k(k, "parity_odd");
  const double kap = p.kappa;
  const double im = k * std::sin(k * x) + kap * std::cos(k * x) * std::tanh(kap * x);
  return cplx(0.0, im) / (std::sqrt(pi) * cplx(kap, k));
}

inline cplx parity_even_derivative(double k, double x, const PotentialParams& p) {
  detail::require_positive_k(k, "parity_even_derivative");
  const double kap = p.kappa;
  const double t = std::tanh(kap * x);
  const double s = detail::sech(kap * x);
  const double sn = std::sin(k * x), cs = std::cos(k * x);
  const double re = -k * k * sn - kap * k * cs * t - kap * kap * sn * s * s;
  return re / (std::sqrt(pi) * cplx(kap, k));
}

inline cplx parity_odd_derivative(double k, double x, const PotentialParams& p) {
  detail::require_positive_k(k, "parity_odd_derivative");
  const double kap = p.kappa;
  const double t = std::tanh(kap * x);
  const double s = detail::sech(kap * x);
  const double sn = std::sin(k * x), cs = std::cos(k * x);
  const double im = k * k * cs - kap * k * sn * t + kap * kap * cs * s * s;
  return cplx(0.0, im) / (std::sqrt(pi) * cplx(kap, k));
}

/// a f = -i f' - i kappa tanh(kappa x) f
template <class F>
cplx apply_a(const F& f, double x, const PotentialParams& p) {
  const Sample s = f(x);
  const cplx minus_i(0.0, -1.0);
  return minus_i * (s.derivative + p.kappa * std::tanh(p.kappa * x) * s.value);
}

/// a^dagger f = -i f' + i kappa tanh(kappa x) f
template <class F>
cplx apply_a_dagger(const F& f, double x, const PotentialParams& p) {
  const Sample s = f(x);
  const cplx minus_i(0.0, -1.0);
  return minus_i * (s.derivative - p.kappa * std::tanh(p.kappa * x) * s.value);
}

/// Wraps a value-only function with a central-difference derivative,
/// step h = eps^{1/3} max(1, |x|).
template <class G>
DifferentiableFn central_difference(G g) {
  return [g = std::move(g)](double x) -> Sample {
    static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    const double h = base * std::max(1.0, std::abs(x));
    const cplx fp = g(x + h), fm = g(x - h);
    return {cplx(g(x)), (fp - fm) / (2.0 * h)};
  };
}

// Built-in states as DifferentiableFn with analytic derivatives.

inline DifferentiableFn ground_state_fn(const PotentialParams& p) {
  return [p](double x) -> Sample { return {psi0(x, p), psi0_derivative(x, p)}; };
}

inline DifferentiableFn plane_wave_fn(double k) {
  return [k](double x) -> Sample {
    const cplx v = std::polar(1.0 / std::sqrt(2.0 * pi), k * x);
    return {v, cplx(0.0, k) * v};
  };
}

inline DifferentiableFn continuum_fn(double k, const PotentialParams& p) {
  detail::require_nonzero_k(k, "continuum_fn");
  return [k, p](double x) -> Sample { return {psi_k(k, x, p), psi_k_derivative(k, x, p)}; };
}

inline DifferentiableFn parity_even_fn(double k, const PotentialParams& p) {
  detail::require_positive_k(k, "parity_even_fn");
  return [k, p](double x) -> Sample { return {parity_even(k, x, p), parity_even_derivative(k, x, p)}; };
}

inline DifferentiableFn parity_odd_fn(double k, const PotentialParams& p) {
  detail::require_positive_k(k, "parity_odd_fn");
  return [k, p](double x) -> Sample { return {parity_odd(k, x, p), parity_odd_derivative(k, x, p)}; };
}

/// Normalized Gaussian (pi sigma^2)^{-1/4} exp(-(x-shift)^2/(2 sigma^2) + i q x).
inline DifferentiableFn gaussian_fn(double sigma, double shift = 0.0, double modulation = 0.0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_fn: sigma must be positive");
  const double amp = std::pow(pi * sigma * sigma, -0.25);
  return [=](double x) -> Sample {
    const double u = x - shift;
    const cplx v = amp * std::exp(-u * u / (2.0 * sigma * sigma)) * std::polar(1.0, modulation * x);
    return {v, cplx(-u / (sigma * sigma), modulation) * v};
  };
}

}  // namespace reflectionless
