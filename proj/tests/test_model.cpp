#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chq/model.hpp"
#include "chq/riesz.hpp"
#include "chq/special.hpp"

using namespace chq;

namespace {

std::map<std::string, double> raw(double N, double m, double p, double q, double alpha, double mu) {
  return {{"N", N}, {"m", m}, {"p", p}, {"q", q}, {"alpha", alpha}, {"mu", mu}};
}

bool has_violation(const DomainError& e, const std::string& field, const std::string& text) {
  for (const auto& v : e.violations())
    if (v.field == field && v.constraint == text) return true;
  return false;
}

}  // namespace

TEST(Params, AcceptsAdmissibleTuple) {
  const auto P = validate_params(raw(3, 2, 3, 3, 2, 0));
  EXPECT_EQ(P.N, 3);
  EXPECT_DOUBLE_EQ(P.theta, 2.0);  // defaults to m
}

TEST(Params, AlphaMustStayBelowN) {
  try {
    validate_params(raw(3, 2, 3, 3, 3, 0));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_TRUE(has_violation(e, "alpha", "alpha < N required"));
  }
}

TEST(Params, RejectsMEqualOne) {
  try {
    validate_params(raw(3, 1, 1, 0, 1, 0));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_TRUE(has_violation(e, "m", "m > 1 required"));
  }
}

TEST(Params, ListsEveryViolation) {
  try {
    validate_params(raw(3, 0.5, -1, 0, 4, 0));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_TRUE(has_violation(e, "m", "m > 1 required"));
    EXPECT_TRUE(has_violation(e, "p", "p > 0 required"));
    EXPECT_TRUE(has_violation(e, "alpha", "alpha < N required"));
  }
}

TEST(Params, MissingAndUnknownKeys) {
  auto r = raw(3, 2, 3, 3, 2, 0);
  r.erase("mu");
  r["nu"] = 1.0;
  try {
    validate_params(r);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_TRUE(has_violation(e, "mu", "required"));
    EXPECT_TRUE(has_violation(e, "nu", "unknown parameter"));
  }
  EXPECT_THROW(validate_params(raw(2.5, 2, 3, 3, 1, 0)), DomainError);
}

TEST(Params, BandComparison) {
  ComparisonPolicy pol{1e-9};
  EXPECT_EQ(compare(2e-9, pol), Cmp::Above);
  EXPECT_EQ(compare(-2e-9, pol), Cmp::Below);
  EXPECT_EQ(compare(5e-10, pol), Cmp::Within);
  EXPECT_EQ(compare(0.0, pol), Cmp::Within);
}

TEST(HardyConstant, Values) {
  EXPECT_DOUBLE_EQ(hardy_constant(3, 2.0), 0.25);
  EXPECT_EQ(hardy_constant(4, 4.0), 0.0);
  EXPECT_EQ(hardy_constant(2, 2.0), 0.0);
  EXPECT_NEAR(hardy_constant(1, 3.0), 8.0 / 27.0, 1e-15);
}

TEST(Gamma, KnownValues) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  EXPECT_NEAR(gamma_fn(0.5), sqrt_pi, 1e-12 * sqrt_pi);
  EXPECT_NEAR(gamma_fn(5.0), 24.0, 24.0 * 1e-12);
  EXPECT_NEAR(gamma_fn(1.5), sqrt_pi / 2, 1e-12);
}

TEST(Gamma, MatchesStdlibAcrossRange) {
  for (double x = 0.05; x < 30.0; x *= 1.37)
    EXPECT_NEAR(gamma_fn(x) / std::tgamma(x), 1.0, 1e-12) << x;
}

TEST(Gamma, PerturbedTableIsDetectable) {
  auto table = kLanczosCoefficients;
  table[3] *= 1.0 + 1e-6;
  EXPECT_GT(std::abs(lanczos_gamma(2.5, table) / std::tgamma(2.5) - 1.0), 1e-10);
}

TEST(SphereArea, LowDimensions) {
  EXPECT_DOUBLE_EQ(sphere_area(0), 2.0);
  EXPECT_NEAR(sphere_area(1), 2 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(sphere_area(2), 4 * std::numbers::pi, 1e-13);
}

TEST(RieszConstant, Values) {
  EXPECT_NEAR(riesz_constant(3, 2.0), 1.0 / (4 * std::numbers::pi), 1e-14);
  EXPECT_NEAR(riesz_constant(1, 0.5), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-13);
  for (int N = 1; N <= 6; ++N)
    for (double a = 0.1; a < N; a += 0.37) EXPECT_GT(riesz_constant(N, a), 0.0);
}
