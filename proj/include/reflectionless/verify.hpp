#pragma once

// Verification suites behind `reflectionless verify`. Each suite returns one
// ReportRecord per check; quadrature failures become failed records.

#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "reflectionless/completeness.hpp"
#include "reflectionless/oracle.hpp"
#include "reflectionless/report.hpp"
#include "reflectionless/special_integrals.hpp"

namespace reflectionless {

enum class Suite { orthonormality, completeness, parity, momentum, transforms, oracle, all };

namespace detail {

inline QuadratureSpec suite_spec(double tol, double cutoff = 40.0) {
  QuadratureSpec s;
  s.abs_tol = tol;
  s.rel_tol = tol;
  s.decay_cutoff = cutoff;
  return s;
}

/// Runs `body`, turning quadrature failure into a failed record.
template <class Body>
void guarded(std::vector<ReportRecord>& out, const std::string& name, double tolerance, Body&& body) {
  try {
    body();
  } catch (const NonConvergence& e) {
    out.push_back(failed_record(name, 0.0, e.best().value, e.best().err_estimate, tolerance));
  } catch (const EigenNonConvergence& e) {
    out.push_back(failed_record(name, 0.0, 0.0, HUGE_VAL, tolerance));
  }
}

/// Records the worst of several (expected, actual) pairs under one name.
struct WorstCase {
  cplx expected = 0.0, actual = 0.0;
  double err = -1.0;
  void add(cplx e, cplx a) {
    const double d = std::abs(a - e);
    if (d > err) expected = e, actual = a, err = d;
  }
  ReportRecord record(std::string name, double tolerance) const {
    auto narrow = [](cplx c) -> Scalar { return c.imag() == 0.0 ? Scalar(c.real()) : Scalar(c); };
    return make_record(std::move(name), narrow(expected), narrow(actual), tolerance);
  }
};

}  // namespace detail

/// Five normalized Gaussians (some shifted / modulated) used as expansion
/// test functions.
inline std::vector<DifferentiableFn> gaussian_test_set(double kappa) {
  const double s = 1.0 / kappa;
  return {gaussian_fn(s), gaussian_fn(0.7 * s, 0.5 * s), gaussian_fn(1.5 * s, -1.0 * s),
          gaussian_fn(s, 0.0, 2.0 * kappa), gaussian_fn(0.8 * s, 1.0 * s, -1.5 * kappa)};
}

inline std::vector<ReportRecord> verify_transforms(const RunConfig& cfg) {
  const auto p = cfg.params();
  const double kap = p.kappa;
  std::vector<ReportRecord> out;
  const auto spec = detail::suite_spec(1e-12, 40.0 / kap);

  detail::guarded(out, "transforms.ft_sech2_quadrature", 1e-8, [&] {
    detail::WorstCase w;
    for (int i = 0; i < 20; ++i) {
      const double k = 0.05 * kap * std::pow(400.0, i / 19.0);
      const auto r = integrate_real_line(
          [&](double x) {
            const double s = detail::sech(kap * x);
            return s * s * std::polar(1.0, k * x);
          },
          spec);
      w.add(ft_sech2(k, p), r.value);
    }
    out.push_back(w.record("transforms.ft_sech2_quadrature", 1e-8));
  });
  out.push_back(make_record("transforms.ft_sech2_limit", 2.0 / kap, ft_sech2(0.0, p), 1e-12 / kap));

  {
    detail::WorstCase w;
    for (int i = 0; i < 50; ++i) {
      const double k = (-10.0 + 20.0 * (i + 0.5) / 50.0) * kap;
      w.add(kap * ft_sech2(k, p), cplx(0.0, -k) * ft_tanh(k, p));
    }
    out.push_back(w.record("transforms.ft_tanh_identity", 1e-14 * kap * 2.0));
  }

  detail::guarded(out, "transforms.lorentzian_quadrature", 1e-6, [&] {
    const double d = 0.5 / kap, K = 200.0 * kap;
    const auto r = integrate(
        [&](double k) { return std::polar(1.0, k * d) / ((k * k + kap * kap) * 2.0 * pi); }, -K, K, spec, 64);
    const double tail = -std::sin(K * d) / (pi * K * K * d);
    out.push_back(make_record("transforms.lorentzian_quadrature", lorentzian_ft(d, p), r.value.real() + tail, 1e-6));
  });
  return out;
}

inline std::vector<ReportRecord> verify_orthonormality(const RunConfig& cfg) {
  const auto p = cfg.params();
  const double kap = p.kappa;
  std::vector<ReportRecord> out;
  const auto spec = detail::suite_spec(std::min(cfg.tolerance * 1e-2, 1e-8), 40.0 / kap);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> center(0.3 * kap, 3.0 * kap);

  const double c1 = center(rng), c2 = c1 + 3.0 * kap, c3 = center(rng);
  const double w = 0.25 * kap;
  const auto g1 = gaussian_packet(c1, w, 0.0);
  const auto g2 = gaussian_packet(c2, w, 0.0);
  const auto g3 = gaussian_packet(c3, w, 1.0 / kap);

  detail::guarded(out, "orthonormality.same_packet", cfg.tolerance, [&] {
    out.push_back(make_record("orthonormality.same_packet", packet_overlap(g1, g1, spec),
                              smeared_orthonormality(g1, g1, p, spec), cfg.tolerance));
  });
  detail::guarded(out, "orthonormality.disjoint_packets", cfg.tolerance, [&] {
    out.push_back(make_record("orthonormality.disjoint_packets", packet_overlap(g1, g2, spec),
                              smeared_orthonormality(g1, g2, p, spec), cfg.tolerance));
  });
  detail::guarded(out, "orthonormality.shifted_packets", cfg.tolerance, [&] {
    out.push_back(make_record("orthonormality.shifted_packets", packet_overlap(g1, g3, spec),
                              smeared_orthonormality(g1, g3, p, spec), cfg.tolerance));
  });
  detail::guarded(out, "orthonormality.bound_continuum", cfg.tolerance, [&] {
    const PacketWavefunction wf(g3, ContinuumBasis::normalized, p, spec.decay_cutoff);
    const auto r = integrate([&](double x) { return psi0(x, p) * wf.value(x); }, -spec.decay_cutoff,
                             spec.decay_cutoff, spec, 32);
    out.push_back(make_record("orthonormality.bound_continuum", cplx(0.0), r.value, cfg.tolerance));
  });
  return out;
}

inline std::vector<ReportRecord> verify_completeness(const RunConfig& cfg) {
  const auto p = cfg.params();
  const double kap = p.kappa;
  std::vector<ReportRecord> out;
  const auto spec = detail::suite_spec(1e-11, 40.0 / kap);

  detail::guarded(out, "completeness.count_bound_states", 1e-8, [&] {
    out.push_back(make_record("completeness.count_bound_states", 1.0, count_bound_states(p, spec), 1e-8));
  });

  {
    std::vector<double> xs(401);
    for (int i = 0; i < 401; ++i) xs[i] = (-10.0 + 0.05 * i) / kap;
    const auto ex = extract_bound_state(xs, p);
    detail::WorstCase w;
    for (std::size_t i = 0; i < xs.size(); ++i) w.add(psi0(xs[i], p), ex[i]);
    out.push_back(w.record("completeness.extract_bound_state", 1e-10));
  }

  {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> xd(-5.0 / kap, 5.0 / kap);
    detail::WorstCase w;
    for (int i = 0; i < 50; ++i) {
      const double x = xd(rng), y = xd(rng);
      if (x == y) continue;
      w.add(psi0(x, p) * psi0(y, p), defect_offdiagonal(x, y, p));
    }
    out.push_back(w.record("completeness.defect_rank_one", 1e-12 * kap));
  }

  const auto grid = make_k_grid(cfg.k_max, cfg.k_points, p);
  const auto fns = gaussian_test_set(kap);
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> probe(-3.0 / kap, 3.0 / kap);
  std::vector<double> probes(21);
  for (auto& x : probes) x = probe(rng);

  for (std::size_t j = 0; j < fns.size(); ++j) {
    const std::string tag = "completeness.gaussian_" + std::to_string(j);
    detail::guarded(out, tag + ".reconstruct", cfg.tolerance * 10.0, [&] {
      const auto coeffs = expand(fns[j], p, grid, spec);
      auto continuum = coeffs;
      continuum.c0 = 0.0;
      detail::WorstCase full, defect;
      for (double x : probes) {
        const cplx f = fns[j](x).value;
        full.add(f, reconstruct(coeffs, x, p));
        defect.add(coeffs.c0 * psi0(x, p), f - reconstruct(continuum, x, p));
      }
      out.push_back(full.record(tag + ".reconstruct", cfg.tolerance * 10.0));
      out.push_back(defect.record(tag + ".defect_residual", cfg.tolerance * 10.0));
      out.push_back(make_record(tag + ".parseval", 1.0, coeffs.parseval_sum(), cfg.tolerance));
    });
  }
  return out;
}

inline std::vector<ReportRecord> verify_parity(const RunConfig& cfg) {
  const auto p = cfg.params();
  const double kap = p.kappa;
  std::vector<ReportRecord> out;
  {
    detail::WorstCase w;
    for (int i = 0; i < 50; ++i) {
      const double x = (-6.0 + 12.0 * i / 49.0) / kap;
      w.add(continuum_defect_diagonal(x, p).value, parity_defect_diagonal(x, p));
    }
    out.push_back(w.record("parity.defect_diagonal", 1e-12 * kap));
  }
  {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> xd(-4.0 / kap, 4.0 / kap);
    detail::WorstCase w;
    for (int i = 0; i < 50; ++i) {
      const double x = xd(rng), y = xd(rng);
      w.add(psi0(x, p) * psi0(y, p), parity_defect_kernel(x, y, p));
    }
    out.push_back(w.record("parity.defect_kernel", 1e-12 * kap));
  }
  detail::guarded(out, "parity.smeared_defect", 1e-4, [&] {
    const KernelProbe probe{0.3 / kap, 0.2 / kap};
    const auto r = smeared_parity_defect(probe, 60.0 * kap, p, detail::suite_spec(1e-12, 40.0 / kap));
    out.push_back(make_record("parity.smeared_defect", r.closed_form, r.numeric, 1e-4));
  });
  detail::guarded(out, "parity.sector_orthogonality", cfg.tolerance, [&] {
    const auto spec = detail::suite_spec(std::min(cfg.tolerance * 1e-2, 1e-8), 40.0 / kap);
    const auto g = gaussian_packet(1.2 * kap, 0.25 * kap);
    const PacketWavefunction e(g, ContinuumBasis::even, p, spec.decay_cutoff);
    const PacketWavefunction o(g, ContinuumBasis::odd, p, spec.decay_cutoff);
    const auto r = integrate([&](double x) { return std::conj(e.value(x)) * o.value(x); }, -spec.decay_cutoff,
                             spec.decay_cutoff, spec, 32);
    out.push_back(make_record("parity.sector_orthogonality", cplx(0.0), r.value, cfg.tolerance));
  });
  return out;
}

inline std::vector<ReportRecord> verify_momentum(const RunConfig& cfg) {
  const auto p = cfg.params();
  const double kap = p.kappa;
  std::vector<ReportRecord> out;
  const auto spec = detail::suite_spec(1e-12, 40.0 / kap);
  static constexpr std::array<std::array<double, 2>, 10> pairs{{{0.5, 1.0},
                                                                 {1.0, 0.5},
                                                                 {0.3, 2.0},
                                                                 {2.0, 0.3},
                                                                 {1.0, 1.7},
                                                                 {1.5, 3.0},
                                                                 {3.0, 1.0},
                                                                 {0.1, 0.9},
                                                                 {4.0, 2.5},
                                                                 {0.8, 5.0}}};
  detail::guarded(out, "momentum.regular_part", 1e-6, [&] {
    detail::WorstCase w;
    for (const auto& kk : pairs) {
      const double k_odd = kk[0] * kap, k_even = kk[1] * kap;
      w.add(momentum_matrix_element_regular(k_odd, k_even, p), momentum_extra_overlap(k_odd, k_even, p, spec).value);
    }
    out.push_back(w.record("momentum.regular_part", 1e-6));
  });
  {
    detail::WorstCase w;
    for (double k : {0.4, 1.0, 2.3}) {
      for (double x : {-2.0, 0.3, 1.7}) {
        const auto split = momentum_on_even_decomposition(k * kap, x / kap, p);
        const cplx direct = cplx(0.0, -1.0) * parity_even_derivative(k * kap, x / kap, p);
        w.add(direct, split.skew_part + split.extra_part);
      }
    }
    out.push_back(w.record("momentum.even_decomposition", 1e-12));
  }
  return out;
}

inline std::vector<ReportRecord> verify_oracle(const RunConfig& cfg) {
  const auto p = cfg.params();
  const double kap = p.kappa;
  std::vector<ReportRecord> out;
  const GridSpec g{cfg.grid_l, cfg.grid_n};

  detail::guarded(out, "oracle.ground_energy", 1e-3 * kap * kap, [&] {
    const auto gs = oracle_ground_state(g, p);
    out.push_back(make_record("oracle.ground_energy", bound_energy(p), gs.energy, 1e-3 * kap * kap));
    detail::WorstCase w;
    for (std::size_t i = 0; i < gs.x.size(); ++i) w.add(psi0(gs.x[i], p), gs.psi[i]);
    out.push_back(w.record("oracle.ground_state_shape", 1e-3 * std::sqrt(kap)));
    out.push_back(make_record("oracle.ground_state_nodes", 0.0, static_cast<double>(count_nodes(gs.psi)), 0.0));
  });
  {
    const auto m = build_hamiltonian(g, p);
    out.push_back(make_record("oracle.negative_eigenvalues", 1.0,
                              static_cast<double>(count_eigenvalues_below(m, 0.0)), 0.0));
  }

  const GridSpec scatter{cfg.grid_l, std::max(cfg.grid_n, 39999)};
  detail::WorstCase refl, unit, phase;
  for (double k : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    ScatteringAmplitudes s;
    try {
      s = transfer_matrix_reflection(k * kap, p, scatter);
    } catch (const StepSizeError& e) {
      s = transfer_matrix_reflection(k * kap, p, {scatter.half_width, e.suggested_n()});
    }
    refl.add(0.0, s.reflection);
    unit.add(1.0, std::norm(s.reflection) + std::norm(s.transmission));
    phase.add(std::arg(transmission_amplitude(k * kap, p)), std::arg(s.transmission));
  }
  out.push_back(refl.record("oracle.reflection", 1e-6));
  out.push_back(unit.record("oracle.unitarity", 1e-8));
  out.push_back(phase.record("oracle.transmission_phase", 1e-4));
  return out;
}

/// Runs the selected suites concurrently; records come back sorted by name.
inline std::vector<ReportRecord> run_verify(const RunConfig& cfg, Suite suite) {
  using Fn = std::vector<ReportRecord> (*)(const RunConfig&);
  std::vector<Fn> fns;
  switch (suite) {
    case Suite::orthonormality: fns = {verify_orthonormality}; break;
    case Suite::completeness: fns = {verify_completeness}; break;
    case Suite::parity: fns = {verify_parity}; break;
    case Suite::momentum: fns = {verify_momentum}; break;
    case Suite::transforms: fns = {verify_transforms}; break;
    case Suite::oracle: fns = {verify_oracle}; break;
    case Suite::all:
      fns = {verify_orthonormality, verify_completeness, verify_parity, verify_momentum, verify_transforms,
             verify_oracle};
      break;
  }
  std::vector<std::future<std::vector<ReportRecord>>> jobs;
  for (Fn f : fns) jobs.push_back(std::async(std::launch::async, f, std::cref(cfg)));
  std::vector<ReportRecord> records;
  for (auto& j : jobs) {
    auto part = j.get();
    records.insert(records.end(), part.begin(), part.end());
  }
  sort_records(records);
  return records;
}

}  // namespace reflectionless
