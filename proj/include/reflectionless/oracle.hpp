#pragma once

// Independent check on the closed forms: a finite-difference Hamiltonian in a
// Dirichlet box, a symmetric tridiagonal eigensolver, and fixed-step
// scattering through the well. Only potential_v is shared with the analytic
// side.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reflectionless/analytic.hpp"
#include "reflectionless/params.hpp"

namespace reflectionless {

/// Interior points x_i = -L + (i+1) h, i = 0..n-1, h = 2L/(n+1).
struct GridSpec {
  double half_width = 20.0;
  int n = 2000;

  double spacing() const { return 2.0 * half_width / (n + 1); }
  double x(int i) const { return -half_width + (i + 1) * spacing(); }

  void validate() const {
    if (n < 3) throw std::invalid_argument("GridSpec: need n >= 3 interior points");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw std::invalid_argument("GridSpec: half_width must be positive");
  }
};

struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples i and i+1

  std::size_t size() const { return diag.size(); }

  std::vector<double> multiply(const std::vector<double>& v) const {
    const std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * v[i];
      if (i > 0) s += offdiag[i - 1] * v[i - 1];
      if (i + 1 < n) s += offdiag[i] * v[i + 1];
      out[i] = s;
    }
    return out;
  }

  /// max-row-sum norm
  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      double s = std::abs(diag[i]);
      if (i > 0) s += std::abs(offdiag[i - 1]);
      if (i + 1 < size()) s += std::abs(offdiag[i]);
      m = std::max(m, s);
    }
    return m;
  }
};

class EigenNonConvergence : public std::runtime_error {
 public:
  EigenNonConvergence(std::size_t index, int iterations)
      : std::runtime_error("eig_tridiagonal: no convergence for eigenvalue " + std::to_string(index) + " after " +
                           std::to_string(iterations) + " iterations"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// diag = 2/h^2 + V(x_i), offdiag = -1/h^2 (Dirichlet walls at +-L).
inline TridiagonalMatrix build_hamiltonian(const GridSpec& g, const PotentialParams& p) {
  g.validate();
  const double h = g.spacing();
  const double inv_h2 = 1.0 / (h * h);
  TridiagonalMatrix m;
  m.diag.resize(g.n);
  m.offdiag.assign(g.n - 1, -inv_h2);
  for (int i = 0; i < g.n; ++i) m.diag[i] = 2.0 * inv_h2 + potential_v(g.x(i), p);
  return m;
}

struct EigenDecomposition {
  std::vector<double> values;                              // ascending
  std::optional<std::vector<std::vector<double>>> vectors; // vectors[j] pairs with values[j]
};

/// Implicit-shift QL for symmetric tridiagonal matrices.
inline EigenDecomposition eig_tridiagonal(const TridiagonalMatrix& m, bool want_vectors, int max_iterations = 60) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  if (m.offdiag.size() + 1 != n) throw std::invalid_argument("eig_tridiagonal: offdiag must have n-1 entries");

  std::vector<double> d = m.diag;
  std::vector<double> e(n, 0.0);
  std::copy(m.offdiag.begin(), m.offdiag.end(), e.begin());

  // z is row-major n x n; column j accumulates eigenvector j
  std::vector<double> z;
  if (want_vectors) {
    z.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  }

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t mm;
    do {
      for (mm = l; mm + 1 < n; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (mm == l) break;
      if (iter++ == max_iterations) throw EigenNonConvergence(l, max_iterations);

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, shift = 0.0;
      bool underflow = false;
      for (std::size_t ii = mm; ii-- > l;) {
        double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= shift;
          e[mm] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - shift;
        r = (d[ii] - g) * s + 2.0 * c * b;
        shift = s * r;
        d[ii + 1] = g + shift;
        g = c * r - b;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            f = z[k * n + ii + 1];
            z[k * n + ii + 1] = s * z[k * n + ii] + c * f;
            z[k * n + ii] = c * z[k * n + ii] - s * f;
          }
        }
      }
      if (underflow) continue;
      d[l] -= shift;
      e[l] = g;
      e[mm] = 0.0;
    } while (true);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = d[order[j]];
  if (want_vectors) {
    std::vector<std::vector<double>> vecs(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      auto& v = vecs[j];
      for (std::size_t k = 0; k < n; ++k) v[k] = z[k * n + order[j]];
      // first non-negligible component positive
      const double peak = std::abs(*std::max_element(v.begin(), v.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
      }));
      for (double comp : v) {
        if (std::abs(comp) > 1e-8 * peak) {
          if (comp < 0.0)
            for (double& c2 : v) c2 = -c2;
          break;
        }
      }
    }
    out.vectors = std::move(vecs);
  }
  return out;
}

/// Number of eigenvalues strictly below `shift` (Sturm sequence).
inline std::size_t count_eigenvalues_below(const TridiagonalMatrix& m, double shift) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double off2 = i > 0 ? m.offdiag[i - 1] * m.offdiag[i - 1] : 0.0;
    q = m.diag[i] - shift - (i > 0 ? off2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

/// Lowest eigenvalue by bisection on the Sturm count, to absolute accuracy `tol`.
inline double lowest_eigenvalue_bisection(const TridiagonalMatrix& m, double tol = 1e-13) {
  if (m.size() == 0) throw std::invalid_argument("lowest_eigenvalue_bisection: empty matrix");
  double lo = std::numeric_limits<double>::max(), hi = -lo;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.offdiag[i - 1]);
    if (i + 1 < m.size()) r += std::abs(m.offdiag[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  const double floor = tol * std::max(1.0, m.norm_inf()) * 1e-3;
  while (hi - lo > std::max(tol, floor)) {
    const double mid = 0.5 * (lo + hi);
    if (count_eigenvalues_below(m, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

struct GroundState {
  double energy = 0.0;
  std::vector<double> x;
  std::vector<double> psi;  // sum psi_i^2 h = 1, positive
};

/// Lowest eigenpair of the discretized H. The eigenvalue comes from QL
/// (bisection if QL stalls); the vector from inverse iteration just below it.
inline GroundState oracle_ground_state(const GridSpec& g, const PotentialParams& p) {
  const TridiagonalMatrix m = build_hamiltonian(g, p);
  double energy;
  try {
    energy = eig_tridiagonal(m, false).values.front();
  } catch (const EigenNonConvergence&) {
    energy = lowest_eigenvalue_bisection(m);
  }

  const std::size_t n = m.size();
  // M - sigma I is positive definite for sigma below the lowest eigenvalue,
  // so the unpivoted Thomas solve is stable.
  const double sigma = energy - 1e-8 * std::max(1.0, std::abs(energy));
  std::vector<double> v(n, 1.0), cprime(n), rhs(n);
  const double h = g.spacing();
  for (int sweep = 0; sweep < 4; ++sweep) {
    rhs = v;
    double denom = m.diag[0] - sigma;
    cprime[0] = n > 1 ? m.offdiag[0] / denom : 0.0;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = (m.diag[i] - sigma) - m.offdiag[i - 1] * cprime[i - 1];
      cprime[i] = i + 1 < n ? m.offdiag[i] / denom : 0.0;
      rhs[i] = (rhs[i] - m.offdiag[i - 1] * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cprime[i] * rhs[i + 1];
    double norm = 0.0;
    for (double c : rhs) norm += c * c;
    norm = std::sqrt(norm * h);
    for (std::size_t i = 0; i < n; ++i) v[i] = rhs[i] / norm;
  }
  const double peak = *std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (peak < 0.0)
    for (double& c : v) c = -c;

  GroundState out;
  out.energy = energy;
  out.psi = std::move(v);
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = g.x(static_cast<int>(i));
  return out;
}

/// Sign changes between components above `rel_floor` of the peak.
inline int count_nodes(const std::vector<double>& v, double rel_floor = 1e-10) {
  double peak = 0.0;
  for (double c : v) peak = std::max(peak, std::abs(c));
  int nodes = 0, last = 0;
  for (double c : v) {
    if (std::abs(c) <= rel_floor * peak) continue;
    const int sgn = c > 0.0 ? 1 : -1;
    if (last != 0 && sgn != last) ++nodes;
    last = sgn;
  }
  return nodes;
}

// ---------------------------------------------------------------------------
// Scattering

class StepSizeError : public std::runtime_error {
 public:
  StepSizeError(const std::string& what, int suggested_n) : std::runtime_error(what), suggested_n_(suggested_n) {}
  int suggested_n() const noexcept { return suggested_n_; }

 private:
  int suggested_n_;
};

struct ScatteringAmplitudes {
  cplx reflection;
  cplx transmission;
};

/// Integrates u'' = (V - k^2) u from x = +L (pure e^{ikx}) back to -L with
/// classical RK4 on the grid step, then splits u at -L into incident and
/// reflected waves. `max_depth` bounds |V| for the step-size check.
template <class Potential>
ScatteringAmplitudes transfer_matrix_reflection(double k, const Potential& v, double max_depth, const GridSpec& g,
                                                double tol) {
  if (!(k > 0.0)) throw DomainError("transfer_matrix_reflection: k must be positive");
  g.validate();
  const double L = g.half_width;
  const int steps = g.n + 1;
  const double h = g.spacing();
  const double q = std::sqrt(k * k + max_depth);
  if (std::pow(q * h, 4) >= tol) {
    const int suggested = static_cast<int>(std::ceil(2.0 * L * q / std::pow(tol, 0.25)));
    throw StepSizeError("transfer_matrix_reflection: step too coarse for k = " + std::to_string(k) +
                            " (need n >= " + std::to_string(suggested) + ")",
                        suggested);
  }

  const cplx ik(0.0, k);
  cplx u = std::polar(1.0, k * L);
  cplx du = ik * u;
  auto rhs = [&](double x, cplx uu) { return (v(x) - k * k) * uu; };
  const double step = -h;
  for (int i = 0; i < steps; ++i) {
    const double x = L + i * step;
    const cplx k1u = du, k1d = rhs(x, u);
    const cplx k2u = du + 0.5 * step * k1d, k2d = rhs(x + 0.5 * step, u + 0.5 * step * k1u);
    const cplx k3u = du + 0.5 * step * k2d, k3d = rhs(x + 0.5 * step, u + 0.5 * step * k2u);
    const cplx k4u = du + step * k3d, k4d = rhs(x + step, u + step * k3u);
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += step / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  const double x_end = -L;
  const cplx incident = 0.5 * (u + du / ik) * std::polar(1.0, -k * x_end);
  const cplx reflected = 0.5 * (u - du / ik) * std::polar(1.0, k * x_end);
  return {reflected / incident, 1.0 / incident};
}

inline ScatteringAmplitudes transfer_matrix_reflection(double k, const PotentialParams& p, const GridSpec& g) {
  return transfer_matrix_reflection(
      k, [&p](double x) { return potential_v(x, p); }, 2.0 * p.kappa * p.kappa, g, p.tol);
}

}  // namespace reflectionless
