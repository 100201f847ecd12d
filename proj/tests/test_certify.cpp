#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chq/certify.hpp"
#include "chq/io.hpp"

using namespace chq;

namespace {

ProblemParams params(int N, double m, double p, double q, double alpha, double mu) {
  return {N, m, p, q, alpha, mu, m};
}

}  // namespace

TEST(ChooseGamma, SubcaseOneA) {
  const auto P = params(3, 2, 3, 3, 2, 0);
  const auto c = choose_gamma(P, solve_beta_roots(3, 2, 0));
  EXPECT_EQ(c.subcase, Subcase::OneA);
  EXPECT_NEAR(c.lo, -1.0, 1e-12);
  EXPECT_NEAR(c.hi, -0.8, 1e-12);
  EXPECT_NEAR(c.gamma, -0.9, 1e-12);
  EXPECT_TRUE(c.tie);  // -N/p = β⁻ = -1
}

TEST(ChooseGamma, SubcaseOneB) {
  const auto P = params(3, 2, 4, 3, 2, 0);
  const auto c = choose_gamma(P, solve_beta_roots(3, 2, 0));
  EXPECT_EQ(c.subcase, Subcase::OneB);
  EXPECT_NEAR(c.hi, -0.75, 1e-12);
  EXPECT_NEAR(c.gamma, -0.875, 1e-12);
}

TEST(ChooseGamma, SubcaseOneDIgnoresPositiveUpperRoot) {
  // μ < 0 gives β⁺ > 0, so only -N/p caps the interval.
  const auto P = params(5, 2, 4, 0.5, 1, -0.5);
  const auto roots = solve_beta_roots(5, 2, -0.5);
  ASSERT_GT(roots.beta_plus, 0.0);
  const auto c = choose_gamma(P, roots);
  EXPECT_EQ(c.subcase, Subcase::OneD);
  EXPECT_NEAR(c.hi, -5.0 / 4.0, 1e-12);
}

TEST(ChooseGamma, NeverEmptyForExists) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dn(1, 6);
  std::uniform_real_distribution<double> dm(1.2, 4), dp(0.05, 10), dq(-3, 10), du(-3, 1), da(0.05, 0.95);
  int n = 0;
  for (int k = 0; k < 5000; ++k) {
    const int N = dn(rng);
    const double m = dm(rng);
    auto P = params(N, m, dp(rng), dq(rng), da(rng) * N, du(rng));
    if (classify(P).outcome != Outcome::Exists) continue;
    const auto roots = solve_beta_roots(N, m, P.mu);
    if (roots.degenerate) continue;
    EXPECT_NO_THROW(choose_gamma(P, roots));
    ++n;
  }
  EXPECT_GT(n, 100);
}

TEST(ChoosePowerLog, QuadraticCase) {
  const auto roots = solve_beta_roots(3, 2, 0.25);
  const auto c = choose_powerlog(params(3, 2, 5, 5, 2, 0.25), roots);
  EXPECT_DOUBLE_EQ(c.tau, 0.5);
  EXPECT_NEAR(c.s0, std::exp(2.0), 1e-12);
  EXPECT_GT(std::abs(roots.beta_star) * std::log(c.s0), c.tau);
  const auto e = expansion_coefficients(roots.beta_star, c.tau, 3, 2, 0.25);
  EXPECT_NEAR(e.A, 0.0, 1e-14);
  EXPECT_NEAR(e.B, 0.0, 1e-14);
  EXPECT_GT(e.C, 0.0);
  EXPECT_THROW(choose_powerlog(params(3, 2, 5, 5, 2, 0), solve_beta_roots(3, 2, 0)), DomainError);
}

TEST(Certificate, PowerOneA) {
  const auto sol = existence_certificate(params(3, 2, 3, 3, 2, 0));
  EXPECT_EQ(sol.certificate.profile.kind, ProfileKind::Power);
  EXPECT_EQ(sol.certificate.subcase, Subcase::OneA);
  EXPECT_NEAR(sol.certificate.profile.gamma, -0.9, 1e-12);
  EXPECT_TRUE(sol.report.passed) << sol.report.failure;
  EXPECT_GE(sol.report.min_margin, 0.0);
  EXPECT_TRUE(sol.report.c1_ok);
  EXPECT_TRUE(sol.report.asymptotic_ok);
  EXPECT_EQ(sol.certificate.kappa_history.back(), sol.certificate.profile.kappa);
}

TEST(Certificate, PowerLogAtHardyConstant) {
  const auto sol = existence_certificate(params(3, 2, 5, 5, 2, 0.25));
  EXPECT_EQ(sol.certificate.profile.kind, ProfileKind::PowerLog);
  EXPECT_EQ(sol.certificate.subcase, Subcase::TwoLog);
  EXPECT_NEAR(sol.certificate.profile.gamma, -0.5, 1e-12);
  EXPECT_TRUE(sol.report.passed) << sol.report.failure;
}

TEST(Certificate, LowDimension) {
  const auto sol = existence_certificate(params(2, 2, 2, 3, 1, -1));
  EXPECT_EQ(sol.certificate.profile.kind, ProfileKind::Power);
  EXPECT_TRUE(sol.certificate.inherited_taxonomy);
  EXPECT_TRUE(sol.report.passed) << sol.report.failure;
}

TEST(Certificate, RefusesNonExistence) {
  EXPECT_THROW(existence_certificate(params(3, 2, 3, 1.5, 2, 0)), Error);
}

TEST(Verify, TamperedKappaFails) {
  const auto P = params(3, 2, 3, 3, 2, 0);
  auto cert = existence_certificate(P).certificate;
  cert.profile.kappa *= 1e6;
  const auto rep = verify_supersolution(P, cert);
  EXPECT_FALSE(rep.passed);
  EXPECT_LT(rep.min_margin, 0.0);
}

TEST(Verify, NonIntegrableProfileFails) {
  const auto P = params(3, 2, 3, 3, 2, 0);
  Certificate cert;
  cert.profile = RadialProfile::power(1e-3, -0.5);
  const auto rep = verify_supersolution(P, cert);
  EXPECT_FALSE(rep.c1_ok);
  EXPECT_FALSE(rep.passed);
}

TEST(Verify, KappaScalingIsExact) {
  // Halving κ only rescales LHS by 2^{-(m-1)} and RHS by 2^{-(p+q)}.
  const auto P = params(3, 2, 3, 3, 2, 0);
  auto cert = existence_certificate(P).certificate;
  const auto a = verify_supersolution(P, cert);
  cert.profile.kappa *= 0.5;
  const auto b = verify_supersolution(P, cert);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(a.grid, b.grid);
}

TEST(Verify, CalibratedKappaPasses) {
  const auto P = params(5, 2, 3, 3, 1, 0.2);
  const auto roots = solve_beta_roots(5, 2, 0.2);
  const auto g = choose_gamma(P, roots);
  std::vector<double> history;
  const double kappa = calibrate_kappa(P, RadialProfile::power(1.0, g.gamma), {}, &history);
  EXPECT_EQ(history.back(), kappa);
  Certificate cert;
  cert.profile = RadialProfile::power(kappa, g.gamma);
  cert.subcase = g.subcase;
  EXPECT_TRUE(verify_supersolution(P, cert).passed);
}

TEST(Verify, JsonRoundTripIsBitIdentical) {
  const auto P = params(3, 2, 5, 5, 2, 0.25);
  const auto sol = existence_certificate(P);
  const json text = json::parse(to_json(sol.certificate).dump());
  const auto back = certificate_from_json(text);
  EXPECT_EQ(back.profile.kappa, sol.certificate.profile.kappa);
  EXPECT_EQ(back.profile.s, sol.certificate.profile.s);
  const auto rep = verify_supersolution(P, back);
  EXPECT_EQ(rep.margins, sol.report.margins);
  EXPECT_EQ(rep.min_margin, sol.report.min_margin);
  EXPECT_EQ(to_json(rep).dump(), to_json(sol.report).dump());
}

TEST(Verify, ThreadCountDoesNotChangeReport) {
  const auto P = params(3, 2, 4, 3, 2, 0);
  VerifySettings one, four;
  four.threads = 4;
  const auto a = existence_certificate(P, one);
  const auto b = existence_certificate(P, four);
  EXPECT_EQ(to_json(a.report).dump(), to_json(b.report).dump());
}
