#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chq/beta.hpp"
#include "chq/model.hpp"
#include "chq/radial.hpp"
#include "chq/riesz.hpp"

namespace chq {

/// The subcase interval for γ came out empty although classify said Exists.
class EmptyInterval : public Error {
 public:
  using Error::Error;
};

/// A κ or s search ran out of its step budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

enum class Subcase { OneA, OneB, OneC, OneD, TwoLog };
const char* to_string(Subcase s);
Subcase subcase_from_string(const std::string& s);

struct GammaChoice {
  double gamma = 0.0;
  Subcase subcase = Subcase::OneA;
  double lo = 0.0;
  double hi = 0.0;
  bool tie = false;  // -N/p and β⁻ agree within the band
};

struct Certificate {
  RadialProfile profile;
  Subcase subcase = Subcase::OneA;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  std::vector<double> kappa_history;
  std::vector<double> s_history;
  bool subcase_tie = false;
  bool inherited_taxonomy = false;  // N <= m reuses the N > m subcases
};

struct VerifySettings {
  double r_min = 1.01;
  double r_max = 1e3;
  int points = 64;
  double tol = 1e-6;
  int threads = 1;
};

struct VerificationReport {
  std::vector<double> grid;
  std::vector<double> margins;  // LHS - RHS_upper at each grid radius
  double min_margin = 0.0;
  bool asymptotic_ok = false;
  double tail_log_margin = 0.0;  // min log(LHS / RHS bound) beyond the grid
  bool c1_ok = false;
  bool passed = false;
  double kappa = 0.0;
  std::string bound_case;
  std::string failure;
};

GammaChoice choose_gamma(const ProblemParams& params, const BetaRoots& roots,
                         const ComparisonPolicy& policy = {});

struct PowerLogChoice {
  double tau = 0.0;
  double s0 = 0.0;
};

/// τ = 1/m and the starting s = exp(2τ/|β★|).
PowerLogChoice choose_powerlog(const ProblemParams& params, const BetaRoots& roots);

/// Halves κ from 1 until the profile verifies; at most 60 halvings.
/// Every tried κ is appended to `history`.
double calibrate_kappa(const ProblemParams& params, const RadialProfile& profile,
                       const VerifySettings& settings, std::vector<double>* history = nullptr);

VerificationReport verify_supersolution(const ProblemParams& params, const Certificate& cert,
                                        const VerifySettings& settings = {});

struct CertifiedSolution {
  Certificate certificate;
  VerificationReport report;
};

/// Requires classify(params) = Exists.
CertifiedSolution existence_certificate(const ProblemParams& params,
                                        const VerifySettings& settings = {},
                                        const ComparisonPolicy& policy = {});

}  // namespace chq
