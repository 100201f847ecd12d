#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chq/beta.hpp"
#include "chq/radial.hpp"

using namespace chq;

TEST(OperatorPower, HarmonicPower) {
  const auto u = RadialProfile::power(1.0, -1.0);
  for (double r : {1.2, 2.0, 50.0}) EXPECT_NEAR(operator_power(u, 3, 2.0, 0.0, r), 0.0, 1e-15);
}

TEST(OperatorPower, SubharmonicExponent) {
  const auto u = RadialProfile::power(1.0, -0.9);
  EXPECT_NEAR(operator_power(u, 3, 2.0, 0.0, 2.0), 0.09 * std::pow(2.0, -2.9), 1e-15);
  EXPECT_NEAR(operator_power(u, 3, 2.0, 0.0, 2.0), 0.012054, 1e-5);
}

TEST(OperatorPower, CriticalExponentVanishes) {
  for (auto [N, m] : {std::pair{3, 2.0}, std::pair{5, 3.5}}) {
    const auto u = RadialProfile::power(2.0, beta_star(N, m));
    EXPECT_NEAR(operator_power(u, N, m, hardy_constant(N, m), 3.0), 0.0, 1e-14);
  }
}

TEST(Expansion, TauZeroReducesToPower) {
  const auto e = expansion_coefficients(-0.7, 0.0, 4, 2.5, 0.1);
  EXPECT_EQ(e.b, 0.0);
  EXPECT_EQ(e.c, 0.0);
  EXPECT_EQ(e.B, 0.0);
  EXPECT_EQ(e.C, 0.0);
  EXPECT_NEAR(e.A, g_eval(-0.7, 4, 2.5) - 0.1, 1e-14);
}

TEST(Expansion, CriticalCaseClosedForm) {
  for (auto [N, m, tau] : {std::tuple{3, 2.0, 0.5}, std::tuple{5, 3.0, 0.2}, std::tuple{4, 1.5, 1.0}}) {
    const double bs = beta_star(N, m);
    const auto e = expansion_coefficients(bs, tau, N, m, hardy_constant(N, m));
    const double C = 0.5 * tau * std::pow(std::abs(bs), m - 2) * (m - 1) * (2 - m * tau);
    EXPECT_NEAR(e.A, 0.0, 1e-13);
    EXPECT_NEAR(e.B, 0.0, 1e-13);
    EXPECT_NEAR(e.C, C, 1e-13);
    EXPECT_GT(e.C, 0.0);
  }
}

TEST(Expansion, HandWorkedQuadraticCase) {
  // N=3, m=2, γ=-1/2, τ=1/2, μ=1/4. C follows ½τ|β★|^{m-2}(m-1)(2-mτ) = 1/4.
  const auto e = expansion_coefficients(-0.5, 0.5, 3, 2.0, 0.25);
  EXPECT_NEAR(e.a, 0.25, 1e-15);
  EXPECT_NEAR(e.b, 0.0, 1e-15);
  EXPECT_NEAR(e.c, 0.25, 1e-15);
  EXPECT_NEAR(e.A, 0.0, 1e-15);
  EXPECT_NEAR(e.B, 0.0, 1e-15);
  EXPECT_NEAR(e.C, 0.25, 1e-15);
}

TEST(OperatorPowerLog, TauZeroMatchesPower) {
  const auto pl = RadialProfile::power_log(1.3, -0.8, 0.0, 5.0);
  const auto pw = RadialProfile::power(1.3, -0.8);
  for (double r : {1.5, 3.0, 10.0}) {
    const double a = operator_powerlog_exact(pl, 3, 2.4, 0.05, r);
    const double b = operator_power(pw, 3, 2.4, 0.05, r);
    EXPECT_NEAR(a, b, 1e-14 * std::abs(b));
  }
}

TEST(OperatorPowerLog, CriticalProfilePositive) {
  const double s = std::exp(4.0);
  const auto u = RadialProfile::power_log(1.0, -0.5, 0.5, s);
  const auto e = expansion_coefficients(-0.5, 0.5, 3, 2.0, 0.25);
  for (double r = 1.0; r < 1e8; r *= 1.7) {
    const double v = operator_powerlog_exact(u, 3, 2.0, 0.25, r);
    EXPECT_GT(v, 0.0) << r;
    const double L = std::log(s * r);
    // Leading behaviour C r^{γ(m-1)-m} L^{τ(m-1)-2}.
    if (r > 1e6) EXPECT_NEAR(v / (e.C * std::pow(r, -2.5) * std::pow(L, -1.5)), 1.0, 0.1);
  }
  const auto f = [&](double r) { return u.value(r); };
  for (double r : {1.5, 4.0, 30.0}) {
    const double exact = operator_powerlog_exact(u, 3, 2.0, 0.25, r);
    EXPECT_NEAR(fd_radial_operator(f, 3, 2.0, 0.25, r, 1e-4 * r), exact, 1e-4 * std::abs(exact));
  }
}

TEST(FiniteDifference, HarmonicResidual) {
  const auto f = [](double r) { return 1.0 / r; };
  EXPECT_LE(std::abs(fd_radial_operator(f, 3, 2.0, 0.0, 2.0, 1e-4)), 1e-7);
}

TEST(FiniteDifference, MatchesPowerClosedForm) {
  const auto u = RadialProfile::power(1.0, -0.9);
  const auto f = [&](double r) { return u.value(r); };
  const double exact = operator_power(u, 3, 2.0, 0.0, 2.0);
  EXPECT_NEAR(fd_radial_operator(f, 3, 2.0, 0.0, 2.0, 2e-4), exact, 1e-6 * exact);
}

TEST(FiniteDifference, RandomProfiles) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dm(1.3, 3.5), dg(-3.0, -0.2), dt(0.0, 1.0), dr(0.0, 4.0);
  for (int k = 0; k < 60; ++k) {
    const int N = 2 + k % 4;
    const double m = dm(rng), gamma = dg(rng), tau = dt(rng);
    const double s = std::exp(2.0 * tau / std::abs(gamma)) + 1.0;
    const auto u = RadialProfile::power_log(1.0, gamma, tau, s);
    const double r = std::pow(10.0, dr(rng)) + 0.1;
    const double exact = operator_exact(u, N, m, 0.0, r);
    const auto f = [&](double x) { return u.value(x); };
    const double fd = fd_radial_operator(f, N, m, 0.0, r, 1e-4 * r);
    // Relative to |exact| with a floor at the size of the individual terms.
    const double flux = std::pow(std::abs(u.derivative(r)), m - 1) / r;
    EXPECT_NEAR(fd, exact, 1e-4 * (std::abs(exact) + 1e-3 * flux)) << k;
  }
}

TEST(FiniteDifference, RejectsOversizedStep) {
  const auto f = [](double r) { return 1.0 / r; };
  EXPECT_THROW(fd_radial_operator(f, 3, 2.0, 0.0, 2.0, 0.1), DomainError);
}

TEST(Integrability, ExponentDichotomy) {
  EXPECT_TRUE(check_c1_integrability(RadialProfile::power(1, -0.9), 3, 2.0, 3.0));
  EXPECT_FALSE(check_c1_integrability(RadialProfile::power(1, -0.5), 3, 2.0, 3.0));
  EXPECT_FALSE(check_c1_integrability(RadialProfile::power(1, -2.0 / 3.0), 3, 2.0, 3.0));
}

TEST(Profile, Validation) {
  EXPECT_THROW(RadialProfile::power(0.0, -1.0).validate(), DomainError);
  EXPECT_THROW(RadialProfile::power_log(1.0, -0.5, 0.5, 1.5).validate(), DomainError);
  EXPECT_NO_THROW(RadialProfile::power_log(1.0, -0.5, 0.5, std::exp(4.0)).validate());
}
