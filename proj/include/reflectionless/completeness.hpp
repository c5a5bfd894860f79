#pragma once

// Orthonormality and completeness of the continuum, the rank-1 defect it
// leaves behind, recovery of the bound state from that defect, and the
// momentum operator between parity sectors.
//
// Distributional identities are only ever evaluated against packets or test
// functions; nothing here samples a delta function pointwise.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflectionless/analytic.hpp"
#include "reflectionless/params.hpp"
#include "reflectionless/quadrature.hpp"
#include "reflectionless/special_integrals.hpp"

namespace reflectionless {

/// Which family of continuum states a packet is built from.
enum class ContinuumBasis {
  normalized,    // psi_k, k in R \ {0}
  unnormalized,  // phi_k = (kappa + ik) psi_k
  even,          // psi_k^e, k > 0
  odd,           // psi_k^o, k > 0
};

inline cplx continuum_state(ContinuumBasis basis, double k, double x, const PotentialParams& p) {
  switch (basis) {
    case ContinuumBasis::normalized: return psi_k(k, x, p);
    case ContinuumBasis::unnormalized: return phi_unnormalized(k, x, p);
    case ContinuumBasis::even: return parity_even(k, x, p);
    case ContinuumBasis::odd: return parity_odd(k, x, p);
  }
  throw std::invalid_argument("continuum_state: unknown basis");
}

inline cplx continuum_state_derivative(ContinuumBasis basis, double k, double x, const PotentialParams& p) {
  switch (basis) {
    case ContinuumBasis::normalized: return psi_k_derivative(k, x, p);
    case ContinuumBasis::unnormalized: return phi_unnormalized_derivative(k, x, p);
    case ContinuumBasis::even: return parity_even_derivative(k, x, p);
    case ContinuumBasis::odd: return parity_odd_derivative(k, x, p);
  }
  throw std::invalid_argument("continuum_state_derivative: unknown basis");
}

// ---------------------------------------------------------------------------
// Packets

/// Smearing weight g(k); negligible for |k| > support_cutoff.
struct PacketProfile {
  std::function<cplx(double)> weight;
  double support_cutoff = 0.0;
};

/// g(k) = exp(-(k - center)^2 / (2 width^2)) exp(-i k position):
/// a packet peaked at wavenumber `center`, localized near x = `position`.
inline PacketProfile gaussian_packet(double center, double width, double position = 0.0) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_packet: width must be positive");
  return {[=](double k) {
            const double u = (k - center) / width;
            return std::exp(-0.5 * u * u) * std::polar(1.0, -k * position);
          },
          std::abs(center) + 10.0 * width};
}

/// Psi(x) = int g(k) u_k(x) dk on a fixed Gauss-Legendre k-rule, where u_k is
/// the chosen continuum family. Parity families only use k > 0.
class PacketWavefunction {
 public:
  /// `x_extent` bounds the |x| at which the packet will be evaluated; it sets
  /// the k-panel width so e^{ikx} stays resolved.
  PacketWavefunction(const PacketProfile& g, ContinuumBasis basis, const PotentialParams& p,
                     double x_extent)
      : basis_(basis), params_(p) {
    const bool half_line = basis == ContinuumBasis::even || basis == ContinuumBasis::odd;
    const double lo = half_line ? 0.0 : -g.support_cutoff;
    const double hi = g.support_cutoff;
    const double width = std::min(0.1, 2.0 / std::max(1.0, x_extent));
    if (!half_line) {
      // keep a panel edge at k = 0 so no node lands on the excluded label
      auto left = composite_gauss_legendre(lo, 0.0, width);
      auto right = composite_gauss_legendre(0.0, hi, width);
      absorb(g, left);
      absorb(g, right);
    } else {
      auto rule = composite_gauss_legendre(lo, hi, width);
      absorb(g, rule);
    }
  }

  cplx value(double x) const {
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < k_.size(); ++i) sum += gw_[i] * continuum_state(basis_, k_[i], x, params_);
    return sum;
  }

  cplx derivative(double x) const {
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < k_.size(); ++i)
      sum += gw_[i] * continuum_state_derivative(basis_, k_[i], x, params_);
    return sum;
  }

  Sample operator()(double x) const { return {value(x), derivative(x)}; }

  std::size_t node_count() const { return k_.size(); }

 private:
  void absorb(const PacketProfile& g, const QuadratureRule& rule) {
    std::vector<cplx> weights(rule.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      weights[i] = g.weight(rule.nodes[i]) * rule.weights[i];
      peak = std::max(peak, std::abs(weights[i]));
    }
    for (std::size_t i = 0; i < rule.size(); ++i) {
      if (std::abs(weights[i]) <= 1e-18 * peak || rule.nodes[i] == 0.0) continue;
      k_.push_back(rule.nodes[i]);
      gw_.push_back(weights[i]);
    }
  }

  ContinuumBasis basis_;
  PotentialParams params_;
  std::vector<double> k_;
  std::vector<cplx> gw_;
};

/// int conj(g1(k)) g2(k) dk, the right-hand side of smeared orthonormality.
inline cplx packet_overlap(const PacketProfile& g1, const PacketProfile& g2, const QuadratureSpec& spec,
                           bool half_line = false) {
  const double c = std::max(g1.support_cutoff, g2.support_cutoff);
  auto integrand = [&](double k) { return std::conj(g1.weight(k)) * g2.weight(k); };
  return integrate(integrand, half_line ? 0.0 : -c, c, spec, 32).value;
}

/// <int g1 u_k dk, int g2 u_k' dk'> computed by x-quadrature of the two
/// packet wavefunctions over [-decay_cutoff, decay_cutoff].
inline cplx smeared_orthonormality(const PacketProfile& g1, const PacketProfile& g2, const PotentialParams& p,
                                   const QuadratureSpec& spec,
                                   ContinuumBasis basis = ContinuumBasis::normalized) {
  const PacketWavefunction w1(g1, basis, p, spec.decay_cutoff);
  const PacketWavefunction w2(g2, basis, p, spec.decay_cutoff);
  auto integrand = [&](double x) { return std::conj(w1.value(x)) * w2.value(x); };
  return integrate(integrand, -spec.decay_cutoff, spec.decay_cutoff, spec, 32).value;
}

/// <Psi1, P Psi2> with P = -i d/dx, for packets drawn from any two families.
inline cplx smeared_momentum(const PacketProfile& g1, ContinuumBasis basis1, const PacketProfile& g2,
                             ContinuumBasis basis2, const PotentialParams& p, const QuadratureSpec& spec) {
  const PacketWavefunction w1(g1, basis1, p, spec.decay_cutoff);
  const PacketWavefunction w2(g2, basis2, p, spec.decay_cutoff);
  auto integrand = [&](double x) { return std::conj(w1.value(x)) * cplx(0.0, -1.0) * w2.derivative(x); };
  return integrate(integrand, -spec.decay_cutoff, spec.decay_cutoff, spec, 32).value;
}

// ---------------------------------------------------------------------------
// Spectral expansion

/// Symmetric wavenumber rule for the continuum integral: 10-point
/// Gauss-Legendre panels with a panel edge at 0, log-graded edges from
/// 1e-3 kappa up to kappa, then uniform panels out to k_max. Roughly
/// `node_hint` nodes in total.
inline QuadratureRule make_k_grid(double k_max, int node_hint, const PotentialParams& p) {
  if (!(k_max > 0.0)) throw std::invalid_argument("make_k_grid: k_max must be positive");
  if (node_hint < 20) throw std::invalid_argument("make_k_grid: need at least 20 nodes");
  const int panels_per_side = std::max(1, (node_hint + 10) / 20);

  std::vector<double> edges{0.0};
  double k_lo = 1e-3 * p.kappa;
  if (k_lo < k_max) {
    const double log_top = std::min(p.kappa, k_max);
    for (double e = k_lo; e < log_top * (1.0 - 1e-12); e *= std::sqrt(10.0)) edges.push_back(e);
    edges.push_back(log_top);
  }
  const double start = edges.back();
  const int linear = std::max(1, panels_per_side - static_cast<int>(edges.size()) + 1);
  if (start < k_max) {
    for (int i = 1; i <= linear; ++i) edges.push_back(start + (k_max - start) * i / linear);
    edges.back() = k_max;
  }

  std::vector<double> sym;
  sym.reserve(2 * edges.size() - 1);
  for (auto it = edges.rbegin(); it != edges.rend(); ++it)
    if (*it != 0.0) sym.push_back(-*it);
  sym.insert(sym.end(), edges.begin(), edges.end());
  return composite_gauss_legendre(sym);
}

/// c0 = <psi0, f> and c(k) = <psi_k, f> sampled on a k-rule.
struct ExpansionCoefficients {
  cplx c0;
  std::vector<double> k_grid;
  std::vector<double> weights;
  std::vector<cplx> c;

  /// |c0|^2 + int |c(k)|^2 dk
  double parseval_sum() const {
    double s = std::norm(c0);
    for (std::size_t i = 0; i < c.size(); ++i) s += weights[i] * std::norm(c[i]);
    return s;
  }
};

/// Quadrature failure inside expand(); node() is empty when the bound
/// coefficient c0 failed, otherwise the index into the k-grid.
class ExpansionError : public NonConvergence {
 public:
  ExpansionError(const NonConvergence& cause, std::optional<std::size_t> node)
      : NonConvergence("expand: " + (node ? "node " + std::to_string(*node) : std::string("bound coefficient")) +
                           ": " + cause.what(),
                       cause.best()),
        node_(node) {}
  std::optional<std::size_t> node() const noexcept { return node_; }

 private:
  std::optional<std::size_t> node_;
};

template <class F>
ExpansionCoefficients expand(const F& f, const PotentialParams& p, const QuadratureRule& k_grid,
                             const QuadratureSpec& spec) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid.nodes[i] == 0.0) throw DomainError("expand: k = 0 in grid");
    if (i > 0 && !(k_grid.nodes[i] > k_grid.nodes[i - 1]))
      throw std::invalid_argument("expand: k grid must be strictly increasing");
  }
  ExpansionCoefficients out;
  out.k_grid = k_grid.nodes;
  out.weights = k_grid.weights;
  out.c.resize(k_grid.size());

  const double L = spec.decay_cutoff;
  try {
    out.c0 = integrate([&](double x) { return psi0(x, p) * f(x).value; }, -L, L, spec, 16).value;
  } catch (const NonConvergence& e) {
    throw ExpansionError(e, std::nullopt);
  }
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    const double k = k_grid.nodes[i];
    try {
      out.c[i] = integrate([&](double x) { return std::conj(psi_k(k, x, p)) * f(x).value; }, -L, L, spec, 16)
                     .value;
    } catch (const NonConvergence& e) {
      throw ExpansionError(e, i);
    }
  }
  return out;
}

/// c0 psi0(x) + int c(k) psi_k(x) dk
inline cplx reconstruct(const ExpansionCoefficients& coeffs, double x, const PotentialParams& p) {
  cplx sum = coeffs.c0 * psi0(x, p);
  for (std::size_t i = 0; i < coeffs.c.size(); ++i)
    sum += coeffs.weights[i] * coeffs.c[i] * psi_k(coeffs.k_grid[i], x, p);
  return sum;
}

// ---------------------------------------------------------------------------
// Completeness defect

struct DefectSample {
  double x;
  double value;
};

namespace detail {

// 1 - |tanh u| evaluated without cancellation
inline double tanh_complement(double u) { return 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0); }

}  // namespace detail

/// 1 - tanh(kappa x) tanh(kappa y), accurate when both factors approach +-1.
inline double one_minus_tanh_product(double x, double y, const PotentialParams& p) {
  const double tx = std::tanh(p.kappa * x), ty = std::tanh(p.kappa * y);
  if (tx * ty <= 0.0) return 1.0 - tx * ty;
  const double a = detail::tanh_complement(p.kappa * x);
  const double b = detail::tanh_complement(p.kappa * y);
  return a + (1.0 - a) * b;
}

/// Non-delta part of delta(x-y) - int psi_k*(x) psi_k(y) dk, assembled from
/// the Lorentzian transforms:
///   kappa^2 (1 - t_x t_y) L(y-x) - kappa (t_y - t_x) L'(x-y).
inline double defect_kernel_decomposition(double x, double y, const PotentialParams& p) {
  const double kap = p.kappa;
  double value = kap * kap * one_minus_tanh_product(x, y, p) * lorentzian_ft(y - x, p);
  if (x != y)
    value -= kap * (std::tanh(kap * y) - std::tanh(kap * x)) * lorentzian_ft_derivative(x - y, p);
  return value;
}

inline DefectSample continuum_defect_diagonal(double x, const PotentialParams& p) {
  return {x, defect_kernel_decomposition(x, x, p)};
}

/// The defect kernel at x != y in its pre-simplification form
///   (kappa/2) e^{-kappa|d|} [cosh kappa d + sgn(d) sinh kappa d] / (cosh kappa x cosh kappa y),
/// d = y - x, checked against (kappa/2) sech(kappa x) sech(kappa y).
inline double defect_offdiagonal(double x, double y, const PotentialParams& p) {
  if (x == y) throw DomainError("defect_offdiagonal: x == y, use continuum_defect_diagonal");
  const double kap = p.kappa;
  const double d = y - x;
  // e^{-k|d|} cosh(kd) and e^{-k|d|} sgn(d) sinh(kd), each without overflow
  const double decay = std::exp(-2.0 * kap * std::abs(d));
  const double cosh_part = 0.5 * (1.0 + decay);
  const double sinh_part = 0.5 * (1.0 - decay);
  const double value = 0.5 * kap * (cosh_part + sinh_part) * detail::sech(kap * x) * detail::sech(kap * y);

  const double closed = 0.5 * kap * detail::sech(kap * x) * detail::sech(kap * y);
  if (std::abs(value - closed) > 1e-12 * closed + 1e-300)
    throw InternalInconsistency("defect_offdiagonal: pre-simplification form disagrees with closed form");
  return value;
}

/// Defect from the parity route: minus the non-delta part of
///   int_0^inf [psi^e_k*(x) psi^e_k(y) + psi^o_k*(x) psi^o_k(y)] dk
/// = (1/pi)[ kappa^2 (t_x t_y - 1) C(x-y) + kappa (t_y - t_x) S(x-y) ] + delta,
/// with C(d) = int_0^inf cos(kd)/(k^2+kappa^2) dk = pi L(d) and
///      S(d) = int_0^inf k sin(kd)/(k^2+kappa^2) dk = pi L'(d)  (0 at d = 0).
inline double parity_defect_kernel(double x, double y, const PotentialParams& p) {
  const double kap = p.kappa;
  const double d = x - y;
  const double cosine_half = pi * lorentzian_ft(d, p);
  const double sine_half = d == 0.0 ? 0.0 : pi * lorentzian_ft_derivative(d, p);
  const double non_delta =
      (-kap * kap * one_minus_tanh_product(x, y, p) * cosine_half +
       kap * (std::tanh(kap * y) - std::tanh(kap * x)) * sine_half) /
      pi;
  return -non_delta;
}

inline double parity_defect_diagonal(double x, const PotentialParams& p) { return parity_defect_kernel(x, x, p); }

/// Gaussian test function exp(-(x - center)^2 / (2 width^2)) used to smear
/// kernels.
struct KernelProbe {
  double center = 0.0;
  double width = 0.2;

  double operator()(double x) const {
    const double u = (x - center) / width;
    return std::exp(-0.5 * u * u);
  }
  double lo() const { return center - 12.0 * width; }
  double hi() const { return center + 12.0 * width; }
};

struct SmearedDefect {
  double numeric;      // <phi,phi> - int_0^K (|<psi^e_k,phi>|^2 + |<psi^o_k,phi>|^2) dk
  double closed_form;  // <phi,psi0>^2
};

/// Smears the parity-route completeness kernel with a probe and a k-cutoff K.
inline SmearedDefect smeared_parity_defect(const KernelProbe& probe, double k_cut, const PotentialParams& p,
                                           const QuadratureSpec& spec) {
  if (!(k_cut > 0.0)) throw std::invalid_argument("smeared_parity_defect: k cutoff must be positive");
  const double lo = probe.lo(), hi = probe.hi();
  const double norm2 = integrate([&](double x) { return probe(x) * probe(x); }, lo, hi, spec).value.real();
  const double bound = integrate([&](double x) { return probe(x) * psi0(x, p); }, lo, hi, spec).value.real();

  const auto rule = composite_gauss_legendre(0.0, k_cut, 0.25 * p.kappa);
  double continuum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double k = rule.nodes[i];
    const cplx ce = integrate([&](double x) { return std::conj(parity_even(k, x, p)) * probe(x); }, lo, hi, spec).value;
    const cplx co = integrate([&](double x) { return std::conj(parity_odd(k, x, p)) * probe(x); }, lo, hi, spec).value;
    continuum += rule.weights[i] * (std::norm(ce) + std::norm(co));
  }
  return {norm2 - continuum, bound * bound};
}

// ---------------------------------------------------------------------------
// Bound-state recovery

/// int (defect diagonal) dx, which counts the bound states.
inline double count_bound_states(const PotentialParams& p, const QuadratureSpec& spec) {
  // the diagonal decays like 2 kappa e^{-2 kappa |x|}
  const double L = std::max(spec.decay_cutoff, envelope_cutoff(2.0 * p.kappa, 2.0 * p.kappa, 0.01 * spec.abs_tol));
  return integrate([&](double x) { return continuum_defect_diagonal(x, p).value; }, -L, L, spec, 16).value.real();
}

/// Square root of the defect diagonal, positive branch.
inline std::vector<double> extract_bound_state(const std::vector<double>& xs, const PotentialParams& p) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const double v = continuum_defect_diagonal(x, p).value;
    if (v < -p.tol)
      throw InternalInconsistency("extract_bound_state: negative defect " + std::to_string(v) +
                                  " at x = " + std::to_string(x));
    out.push_back(std::sqrt(std::max(v, 0.0)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Momentum between parity sectors

/// Regular (non-delta) part of <psi^o_{k_odd} | P | psi^e_{k_even}>:
///   [k'(D(k-k') - D(k+k'))/2 + ((k-k') D(k-k') + (k+k') D(k+k'))/4] / ((kappa+ik)(kappa-ik'))
/// with k = k_even, k' = k_odd, D(q) = q / sinh(pi q / 2 kappa).
inline cplx momentum_matrix_element_regular(double k_odd, double k_even, const PotentialParams& p) {
  detail::require_positive_k(k_odd, "momentum_matrix_element_regular");
  detail::require_positive_k(k_even, "momentum_matrix_element_regular");
  const double k = k_even, kp = k_odd;
  const double dm = sinc_sinh(k - kp, p);
  const double dp = sinc_sinh(k + kp, p);
  const double numer = 0.5 * kp * (dm - dp) + 0.25 * ((k - kp) * dm + (k + kp) * dp);
  return numer / (cplx(p.kappa, k) * cplx(p.kappa, -kp));
}

/// (i/sqrt(pi)) kappa^2/(kappa+ik) sin(kx) sech^2(kappa x): the square-integrable
/// odd remainder of P acting on psi^e_k.
inline cplx momentum_extra_term(double k, double x, const PotentialParams& p) {
  const double s = detail::sech(p.kappa * x);
  return cplx(0.0, p.kappa * p.kappa * std::sin(k * x) * s * s) / (std::sqrt(pi) * cplx(p.kappa, k));
}

struct MomentumSplit {
  cplx skew_part;   // k psi^o_k(x)
  cplx extra_part;  // momentum_extra_term(k, x)
};

inline MomentumSplit momentum_on_even_decomposition(double k, double x, const PotentialParams& p) {
  detail::require_positive_k(k, "momentum_on_even_decomposition");
  return {k * parity_odd(k, x, p), momentum_extra_term(k, x, p)};
}

/// <psi^o_{k_odd}, extra term of P psi^e_{k_even}> by direct x-quadrature.
inline QuadratureResult momentum_extra_overlap(double k_odd, double k_even, const PotentialParams& p,
                                               const QuadratureSpec& spec) {
  detail::require_positive_k(k_odd, "momentum_extra_overlap");
  detail::require_positive_k(k_even, "momentum_extra_overlap");
  const double L = std::max(spec.decay_cutoff, envelope_cutoff(2.0 * p.kappa, 4.0 * (k_odd + p.kappa), 0.01 * spec.abs_tol));
  auto integrand = [&](double x) { return std::conj(parity_odd(k_odd, x, p)) * momentum_extra_term(k_even, x, p); };
  return integrate(integrand, -L, L, spec, 32);
}

}  // namespace reflectionless
