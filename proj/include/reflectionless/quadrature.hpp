#pragma once

// Globally adaptive Gauss-Kronrod (10/21) quadrature for complex integrands
// on finite windows, plus composite Gauss-Legendre panels for fixed grids.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "reflectionless/params.hpp"

namespace reflectionless {

/// Tolerances for integrate()/integrate_real_line(). The real-line window is
/// [-decay_cutoff, decay_cutoff]; callers pick the cutoff from the integrand's
/// envelope (see envelope_cutoff).
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  double decay_cutoff = 40.0;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 16)
      throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 16");
    if (!(decay_cutoff > 0.0))
      throw std::invalid_argument("QuadratureSpec: decay_cutoff must be positive");
  }
};

struct QuadratureResult {
  cplx value;
  double err_estimate = 0.0;
  int subdivisions = 0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

/// Smallest L with amplitude * exp(-rate * L) <= abs_tol.
inline double envelope_cutoff(double decay_rate, double amplitude, double abs_tol) {
  if (!(decay_rate > 0.0)) throw std::invalid_argument("envelope_cutoff: decay_rate must be positive");
  return std::max(1.0, std::log(std::max(amplitude, abs_tol) / abs_tol) / decay_rate);
}

namespace detail {

// QUADPACK qk21 abscissae/weights on [-1, 1]; odd indices of kXgk are the
// 10-point Gauss nodes with weights kWg.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_21(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = cplx(f(center));
  cplx kronrod = kWgk[10] * fc;
  cplx gauss(0.0, 0.0);
  double abs_sum = kWgk[10] * std::abs(fc);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const cplx f1 = cplx(f(center - dx));
    const cplx f2 = cplx(f(center + dx));
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  // |K21 - G10| is pessimistic by orders of magnitude on smooth panels;
  // the roundoff floor keeps the estimate from claiming more than the
  // arithmetic can deliver.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return {a, b, kronrod, std::max(std::abs(kronrod - gauss), floor)};
}

}  // namespace detail

/// Adaptive integral of f over [a, b]. f may return double or complex.
/// Starts from `initial_panels` equal panels, then bisects the panel with the
/// largest error until the summed estimate meets max(abs_tol, rel_tol |I|).
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureSpec& spec,
                           int initial_panels = 8) {
  spec.validate();
  if (!(b > a)) {
    if (a == b) return {};
    auto r = integrate(f, b, a, spec, initial_panels);
    r.value = -r.value;
    return r;
  }
  initial_panels = std::clamp(initial_panels, 1, spec.max_subdivisions);

  std::priority_queue<detail::Panel> work;
  cplx total(0.0, 0.0);
  double error = 0.0;
  const double width = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : lo + width;
    auto panel = detail::gauss_kronrod_21(f, lo, hi);
    total += panel.value;
    error += panel.error;
    work.push(panel);
  }

  int panels = initial_panels;
  auto converged = [&] { return error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (!converged()) {
    if (panels >= spec.max_subdivisions) {
      // re-sum to shed accumulated drift before reporting
      cplx v(0.0, 0.0);
      double e = 0.0;
      for (auto q = work; !q.empty(); q.pop()) {
        v += q.top().value;
        e += q.top().error;
      }
      throw NonConvergence("integrate: max_subdivisions (" + std::to_string(spec.max_subdivisions) +
                               ") exhausted, error estimate " + std::to_string(e),
                           {v, e, panels});
    }
    const detail::Panel worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gauss_kronrod_21(f, worst.a, mid);
    auto right = detail::gauss_kronrod_21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    ++panels;
  }

  cplx v(0.0, 0.0);
  double e = 0.0;
  for (; !work.empty(); work.pop()) {
    v += work.top().value;
    e += work.top().error;
  }
  return {v, e, panels};
}

/// Integral over the real line truncated to [-decay_cutoff, decay_cutoff].
template <class F>
QuadratureResult integrate_real_line(const F& f, const QuadratureSpec& spec) {
  return integrate(f, -spec.decay_cutoff, spec.decay_cutoff, spec);
}

/// Nodes and weights of a fixed rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// 10-point Gauss-Legendre on each panel [edges[i], edges[i+1]]; edges must
/// be increasing. Nodes never coincide with panel edges.
inline QuadratureRule composite_gauss_legendre(const std::vector<double>& edges) {
  QuadratureRule rule;
  if (edges.size() < 2) return rule;
  rule.nodes.reserve(10 * (edges.size() - 1));
  rule.weights.reserve(10 * (edges.size() - 1));
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    if (!(b > a)) throw std::invalid_argument("composite_gauss_legendre: edges must increase");
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    // ascending order: negative nodes first
    for (int j = 1; j < 10; j += 2) {
      rule.nodes.push_back(c - h * detail::kXgk[j]);
      rule.weights.push_back(h * detail::kWg[j / 2]);
    }
    for (int j = 9; j >= 1; j -= 2) {
      rule.nodes.push_back(c + h * detail::kXgk[j]);
      rule.weights.push_back(h * detail::kWg[j / 2]);
    }
  }
  return rule;
}

/// Uniform panels of width <= max_width covering [a, b].
inline QuadratureRule composite_gauss_legendre(double a, double b, double max_width) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
  std::vector<double> edges(n + 1);
  for (int i = 0; i <= n; ++i) edges[i] = a + (b - a) * i / n;
  edges.back() = b;
  return composite_gauss_legendre(edges);
}

}  // namespace reflectionless
