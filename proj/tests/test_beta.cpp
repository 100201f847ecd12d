#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chq/beta.hpp"
#include "chq/special.hpp"

using namespace chq;

namespace {

// Roots of β² + (N-2)β + μ = 0, the m = 2 form of G(β) = μ.
std::pair<double, double> quadratic_roots(int N, double mu) {
  const double b = N - 2.0;
  const double d = std::sqrt(std::max(0.0, b * b - 4 * mu));
  return {(-b - d) / 2, (-b + d) / 2};
}

// Trapezoid on a fine grid, used for the ratio of the two Hardy integrals.
double trapezoid(double a, double b, int n, auto f) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

}  // namespace

TEST(G, PointValues) {
  EXPECT_EQ(g_eval(0.0, 3, 2.0), 0.0);
  EXPECT_EQ(g_eval(0.0, 5, 3.3), 0.0);
  EXPECT_NEAR(g_eval(-1.0, 3, 2.0), 0.0, 1e-15);
  EXPECT_NEAR(g_eval(-0.5, 3, 2.0), 0.25, 1e-15);
  EXPECT_NEAR(beta_star(3, 2.0), -0.5, 1e-15);
}

TEST(G, DerivativeMatchesDifferenceQuotient) {
  for (double beta : {-2.0, -0.7, 0.3, 1.4}) {
    const double h = 1e-6;
    const double fd = (g_eval(beta + h, 4, 2.6) - g_eval(beta - h, 4, 2.6)) / (2 * h);
    EXPECT_NEAR(g_derivative(beta, 4, 2.6), fd, 1e-6 * (1 + std::abs(fd)));
  }
}

TEST(Roots, QuadraticCases) {
  auto r = solve_beta_roots(3, 2.0, 0.0);
  EXPECT_NEAR(r.beta_minus, -1.0, 1e-12);
  EXPECT_NEAR(r.beta_plus, 0.0, 1e-12);

  r = solve_beta_roots(3, 2.0, 3.0 / 16);
  EXPECT_NEAR(r.beta_minus, -0.75, 1e-12);
  EXPECT_NEAR(r.beta_plus, -0.25, 1e-12);

  r = solve_beta_roots(3, 2.0, 0.25);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.beta_minus, -0.5);
  EXPECT_EQ(r.beta_plus, -0.5);

  r = solve_beta_roots(2, 2.0, -1.0);
  EXPECT_NEAR(r.beta_minus, -1.0, 1e-12);
  EXPECT_NEAR(r.beta_plus, 1.0, 1e-12);
}

TEST(Roots, AboveHardyConstantThrows) {
  EXPECT_THROW(solve_beta_roots(3, 2.0, 0.3), NoRealRoots);
  EXPECT_NO_THROW(solve_beta_roots(3, 2.0, 0.25 + 1e-12));
}

TEST(Roots, RandomQuadraticAgreement) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dn(1, 6);
  std::uniform_real_distribution<double> du(-6.0, 2.0);
  for (int k = 0; k < 300; ++k) {
    const int N = dn(rng);
    const double mu = hardy_constant(N, 2.0) - std::pow(10.0, du(rng));
    const auto r = solve_beta_roots(N, 2.0, mu);
    const auto [lo, hi] = quadratic_roots(N, mu);
    EXPECT_NEAR(r.beta_minus, lo, 1e-10 * (1 + std::abs(lo)));
    EXPECT_NEAR(r.beta_plus, hi, 1e-10 * (1 + std::abs(hi)));
  }
}

TEST(Roots, ResidualAndOrderingGeneralM) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dn(1, 6);
  std::uniform_real_distribution<double> dm(1.1, 4.0), du(-6.0, 2.0);
  for (int k = 0; k < 300; ++k) {
    const int N = dn(rng);
    const double m = dm(rng);
    const double mu = hardy_constant(N, m) - std::pow(10.0, du(rng));
    const auto r = solve_beta_roots(N, m, mu);
    EXPECT_LE(r.beta_minus, r.beta_star);
    EXPECT_LE(r.beta_star, r.beta_plus);
    EXPECT_LE(std::abs(g_eval(r.beta_minus, N, m) - mu), 1e-9 * (1 + std::abs(mu)));
    EXPECT_LE(std::abs(g_eval(r.beta_plus, N, m) - mu), 1e-9 * (1 + std::abs(mu)));
  }
}

TEST(Roots, SignPatterns) {
  auto r = solve_beta_roots(3, 2.0, 0.0);
  EXPECT_EQ(sign_classification(r, 3, 2.0, 0.0), RootSigns::BothNonpositive);
  EXPECT_LT(r.beta_minus, 0.0);
  r = solve_beta_roots(2, 2.0, -1.0);
  EXPECT_EQ(sign_classification(r, 2, 2.0, -1.0), RootSigns::StraddleZero);
  r = solve_beta_roots(2, 3.0, 0.01);
  EXPECT_EQ(sign_classification(r, 2, 3.0, 0.01), RootSigns::BothNonnegative);
  EXPECT_GE(r.beta_minus, 0.0);
  EXPECT_LE(r.beta_minus, r.beta_star);
}

TEST(Hardy, ZeroBump) {
  RadialBump phi{2.0, 1.0, 0.0};
  const auto s = hardy_check(phi, 3, 2.0);
  EXPECT_EQ(s.lhs, 0.0);
  EXPECT_EQ(s.rhs, 0.0);
}

TEST(Hardy, BumpAgainstFineGrid) {
  RadialBump phi{2.0, 1.0, 1.0};
  const auto s = hardy_check(phi, 3, 2.0);
  EXPECT_GE(s.lhs, s.rhs);
  // Fine-grid ratio; the sphere factor cancels.
  const double lhs = trapezoid(1.0, 3.0, 200000, [&](double r) {
    const double d = phi.derivative(r);
    return d * d * r * r;
  });
  const double rhs = 0.25 * trapezoid(1.0, 3.0, 200000, [&](double r) {
    const double v = phi.value(r);
    return v * v;
  });
  EXPECT_NEAR(s.lhs / s.rhs, lhs / rhs, 1e-6 * lhs / rhs);
}

TEST(Hardy, Homogeneity) {
  const double m = 2.7;
  const auto a = hardy_check({2.0, 0.8, 1.0}, 4, m);
  const auto b = hardy_check({2.0, 0.8, 2.0}, 4, m);
  EXPECT_NEAR(b.lhs / a.lhs, std::pow(2.0, m), 1e-9);
  EXPECT_NEAR(b.rhs / a.rhs, std::pow(2.0, m), 1e-9);
}
