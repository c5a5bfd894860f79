#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "reflectionless/analytic.hpp"

namespace rl = reflectionless;
using rl::cplx;

namespace {

const rl::PotentialParams kUnit{1.0};

// psi_k'' from the closed form, differentiated by hand independently of
// psi_k_derivative: e^{ikx}[-k^3 - i k^2 kap t - 2 k kap^2 s^2 - 2 i kap^3 s^2 t] / (sqrt(2pi)(kap+ik))
cplx psi_k_second_derivative(double k, double x, const rl::PotentialParams& p) {
  const double kap = p.kappa, t = std::tanh(kap * x), s = 1.0 / std::cosh(kap * x);
  const cplx bracket(-k * k * k - 2.0 * k * kap * kap * s * s, -k * k * kap * t - 2.0 * kap * kap * kap * s * s * t);
  return std::polar(1.0, k * x) * bracket / (std::sqrt(2.0 * rl::pi) * cplx(kap, k));
}

}  // namespace

TEST(PotentialParams, RejectsInvalid) {
  EXPECT_THROW(rl::PotentialParams(0.0), std::invalid_argument);
  EXPECT_THROW(rl::PotentialParams(-1.0), std::invalid_argument);
  EXPECT_THROW(rl::PotentialParams(1.0, 1e-2), std::invalid_argument);
  EXPECT_THROW(rl::PotentialParams(1.0, 1e-6, 0.5), std::invalid_argument);
  EXPECT_NO_THROW(rl::PotentialParams(2.0, 1e-8, 1e-4));
}

TEST(Potential, KnownValues) {
  EXPECT_DOUBLE_EQ(rl::potential_v(0.0, kUnit), -2.0);
  EXPECT_NEAR(rl::potential_v(1.0, kUnit), -0.839948683228052139, 1e-15);
  EXPECT_EQ(rl::potential_v(800.0, kUnit), 0.0);
  EXPECT_NEAR(rl::potential_v(-60.0, kUnit), 0.0, 1e-50);
  for (double x : {0.1, 0.7, 3.0, 12.0}) {
    EXPECT_DOUBLE_EQ(rl::potential_v(x, kUnit), rl::potential_v(-x, kUnit));
    EXPECT_LT(rl::potential_v(x, kUnit), 0.0);
  }
}

TEST(BoundState, EnergyAndAmplitude) {
  EXPECT_DOUBLE_EQ(rl::bound_energy(kUnit), -1.0);
  EXPECT_DOUBLE_EQ(rl::bound_energy(rl::PotentialParams(2.0)), -4.0);
  EXPECT_DOUBLE_EQ(rl::bound_energy(rl::PotentialParams(0.5)), -0.25);
  EXPECT_NEAR(rl::psi0(0.0, kUnit), 0.70710678118654752, 1e-16);
  for (double x = -50.0; x <= 50.0; x += 0.25) {
    EXPECT_GT(rl::psi0(x, kUnit), 0.0) << "node at x = " << x;
    EXPECT_DOUBLE_EQ(rl::psi0(x, kUnit), rl::psi0(-x, kUnit));
  }
}

TEST(Continuum, PhiRejectsZeroK) {
  EXPECT_THROW(rl::phi_unnormalized(0.0, 1.0, kUnit), rl::DomainError);
  EXPECT_THROW(rl::psi_k(0.0, 1.0, kUnit), rl::DomainError);
  EXPECT_THROW(rl::transmission_amplitude(0.0, kUnit), rl::DomainError);
}

TEST(Continuum, PointValues) {
  const cplx phi = rl::phi_unnormalized(1.0, 0.0, kUnit);
  EXPECT_NEAR(phi.real(), 1.0 / std::sqrt(2.0 * rl::pi), 1e-16);
  EXPECT_NEAR(phi.imag(), 0.0, 1e-16);

  const cplx psi = rl::psi_k(1.0, 0.0, kUnit);
  EXPECT_NEAR(psi.real(), 0.199471140200716339, 1e-16);
  EXPECT_NEAR(psi.imag(), -0.199471140200716339, 1e-16);

  for (double x : {-50.0, 50.0})
    for (double k : {0.3, 1.0, 7.0}) EXPECT_NEAR(std::abs(rl::psi_k(k, x, kUnit)), 1.0 / std::sqrt(2.0 * rl::pi), 1e-12);
}

TEST(Continuum, NoReflectedWaveOnTheLeft) {
  // x -> -inf: phi_k -> e^{ikx}(k - i kappa)/sqrt(2pi); the gap closes like e^{2 kappa x}
  const double k = 1.0;
  const cplx asym = cplx(k, -1.0) / std::sqrt(2.0 * rl::pi);
  double prev = 1.0;
  for (double x = -2.0; x >= -16.0; x -= 2.0) {
    const double gap = std::abs(rl::phi_unnormalized(k, x, kUnit) - std::polar(1.0, k * x) * asym);
    const double bound = 2.0 / std::sqrt(2.0 * rl::pi) * std::exp(2.0 * x);
    EXPECT_LE(gap, 1.01 * bound + 1e-16) << x;
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  // normalized form
  for (double x : {-20.0, -30.0}) {
    const cplx target = std::polar(1.0, k * x) * cplx(k, -1.0) / (std::sqrt(2.0 * rl::pi) * cplx(1.0, k));
    EXPECT_LT(std::abs(rl::psi_k(k, x, kUnit) - target), 1e-15);
  }
}

TEST(Continuum, EigenEquationFromAnalyticSecondDerivative) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kd(-8.0, 8.0), xd(-6.0, 6.0), kapd(0.3, 3.0);
  for (int i = 0; i < 200; ++i) {
    const rl::PotentialParams p(kapd(rng));
    double k = kd(rng);
    if (std::abs(k) < 1e-3) k = 0.5;
    const double x = xd(rng);
    const cplx lhs = -psi_k_second_derivative(k, x, p) + rl::potential_v(x, p) * rl::psi_k(k, x, p);
    EXPECT_LT(std::abs(lhs - k * k * rl::psi_k(k, x, p)), 1e-10 * (1.0 + k * k));
  }
}

TEST(Continuum, EigenEquationFiniteDifference) {
  // -phi'' + V phi = k^2 phi at (k=1, x=0.7); central-difference error shrinks as h^2
  const double k = 1.0, x = 0.7;
  auto residual = [&](double h) {
    const cplx f0 = rl::phi_unnormalized(k, x, kUnit);
    const cplx fp = rl::phi_unnormalized(k, x + h, kUnit);
    const cplx fm = rl::phi_unnormalized(k, x - h, kUnit);
    const cplx second = (fp - 2.0 * f0 + fm) / (h * h);
    return std::abs(-second + rl::potential_v(x, kUnit) * f0 - k * k * f0);
  };
  const double r1 = residual(1e-2), r2 = residual(5e-3), r3 = residual(2.5e-3);
  EXPECT_LT(r1, 1e-4);
  EXPECT_NEAR(r1 / r2, 4.0, 0.2);
  EXPECT_NEAR(r2 / r3, 4.0, 0.2);
}

TEST(Continuum, TransmissionAmplitude) {
  const cplx t = rl::transmission_amplitude(1.0, kUnit);
  EXPECT_NEAR(t.real(), 0.0, 1e-15);
  EXPECT_NEAR(t.imag(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rl::transmission_amplitude(1e8, kUnit) - 1.0), 0.0, 1e-7);
  for (double k : {0.1, 1.0, 10.0, -3.0}) EXPECT_NEAR(std::abs(rl::transmission_amplitude(k, kUnit)), 1.0, 1e-14);
  // equals the ratio of right/left asymptotic coefficients of psi_k
  const double k = 0.8;
  const cplx right = rl::psi_k(k, 40.0, kUnit) / std::polar(1.0, k * 40.0);
  const cplx left = rl::psi_k(k, -40.0, kUnit) / std::polar(1.0, -k * 40.0);
  EXPECT_LT(std::abs(right / left - rl::transmission_amplitude(k, kUnit)), 1e-14);
}

TEST(Parity, ValuesAndSymmetry) {
  EXPECT_THROW(rl::parity_even(0.0, 1.0, kUnit), rl::DomainError);
  EXPECT_THROW(rl::parity_odd(-1.0, 1.0, kUnit), rl::DomainError);
  for (double k : {0.2, 1.0, 5.0}) EXPECT_EQ(std::abs(rl::parity_odd(k, 0.0, kUnit)), 0.0);
  const cplx e0 = rl::parity_even(1.0, 0.0, kUnit);
  const cplx expected = 1.0 / (std::sqrt(rl::pi) * cplx(1.0, 1.0));
  EXPECT_LT(std::abs(e0 - expected), 1e-16);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> kd(0.01, 10.0), xd(-10.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double k = kd(rng), x = xd(rng);
    const cplx a = rl::psi_k(k, x, kUnit), b = rl::psi_k(k, -x, kUnit);
    EXPECT_LT(std::abs((a + b) / std::sqrt(2.0) - rl::parity_even(k, x, kUnit)), 1e-13);
    EXPECT_LT(std::abs((a - b) / std::sqrt(2.0) - rl::parity_odd(k, x, kUnit)), 1e-13);
    EXPECT_LT(std::abs(rl::parity_even(k, x, kUnit) - rl::parity_even(k, -x, kUnit)), 1e-15);
    EXPECT_LT(std::abs(rl::parity_odd(k, x, kUnit) + rl::parity_odd(k, -x, kUnit)), 1e-15);
  }
}

TEST(Derivatives, AnalyticMatchesCentralDifference) {
  // property: every built-in state's derivative passes the h^2 consistency check
  const rl::PotentialParams p(1.3);
  const std::vector<rl::DifferentiableFn> fns = {rl::ground_state_fn(p),      rl::plane_wave_fn(2.1),
                                                 rl::continuum_fn(-1.7, p),   rl::parity_even_fn(0.9, p),
                                                 rl::parity_odd_fn(2.4, p),   rl::gaussian_fn(0.8, 0.3, 1.5)};
  for (const auto& f : fns) {
    for (double x : {-2.3, -0.4, 0.0, 0.9, 3.1}) {
      const double h = 1e-3;
      const cplx fd = (f(x + h).value - f(x - h).value) / (2.0 * h);
      EXPECT_LT(std::abs(fd - f(x).derivative), 50.0 * h * h) << "x = " << x;
    }
  }
}

TEST(Ladder, AnnihilatesGroundState) {
  for (const double kap : {0.5, 1.0, 3.0}) {
    const rl::PotentialParams p(kap);
    const auto g = rl::ground_state_fn(p);
    for (double x = -10.0; x <= 10.0; x += 0.05) EXPECT_LE(std::abs(rl::apply_a(g, x, p)), 1e-12);
  }
}

TEST(Ladder, RaisingPlaneWaveGivesPhi) {
  for (double k : {-2.0, 0.5, 3.0})
    for (double x : {-4.0, 0.0, 1.2})
      EXPECT_LT(std::abs(rl::apply_a_dagger(rl::plane_wave_fn(k), x, kUnit) - rl::phi_unnormalized(k, x, kUnit)), 1e-15);
}

TEST(Ladder, FactorizationIdentities) {
  // a^dagger a = -d^2 + V + kappa^2 and a a^dagger = -d^2 + kappa^2 on a Gaussian,
  // second derivative by central differences (h^2 accuracy)
  const rl::PotentialParams p(1.0);
  const auto g = rl::gaussian_fn(0.7, 0.2, 0.0);
  const double h = 1e-4;
  auto a_of_g = [&](double x) { return rl::apply_a(g, x, p); };
  auto adag_of_g = [&](double x) { return rl::apply_a_dagger(g, x, p); };
  const auto a_g = rl::central_difference(a_of_g);
  const auto adag_g = rl::central_difference(adag_of_g);
  for (double x = -3.0; x <= 3.0; x += 0.25) {
    const cplx second = (g(x + h).value - 2.0 * g(x).value + g(x - h).value) / (h * h);
    const cplx A = rl::apply_a_dagger(a_g, x, p);
    const cplx B = rl::apply_a(adag_g, x, p);
    EXPECT_LT(std::abs(A - (-second + (rl::potential_v(x, p) + 1.0) * g(x).value)), 1e-5) << x;
    EXPECT_LT(std::abs(B - (-second + 1.0 * g(x).value)), 1e-5) << x;
  }
}

TEST(Scaling, CovarianceIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kapd(0.2, 5.0), xd(-5.0, 5.0), kd(0.1, 6.0);
  for (int i = 0; i < 50; ++i) {
    const rl::PotentialParams p(kapd(rng));
    const double x = xd(rng), k = kd(rng);
    EXPECT_NEAR(rl::psi0(x, p), std::sqrt(p.kappa) * rl::psi0(p.kappa * x, kUnit), 4e-16 * std::sqrt(p.kappa));
    EXPECT_LT(std::abs(rl::psi_k(k, x, p) - rl::psi_k(k / p.kappa, p.kappa * x, kUnit)), 1e-15);
  }
}
