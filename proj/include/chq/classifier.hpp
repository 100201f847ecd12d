#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chq/beta.hpp"
#include "chq/model.hpp"

namespace chq {

enum class Outcome { Exists, NotExists, Boundary };
const char* to_string(Outcome o);

/// A violated condition and the nonexistence result that rules out solutions.
struct Witness {
  std::string condition;
  std::string cited_result;
  double margin = 0.0;
};

struct Verdict {
  Outcome outcome = Outcome::Boundary;
  std::vector<Witness> witnesses;
  std::vector<std::string> boundary_conditions;
};

/// One applicable existence condition. `margin` is the signed distance to
/// the threshold; `state` is its comparison against the band.
struct ConditionEntry {
  std::string condition;
  std::string formula;
  bool satisfied = false;
  double margin = 0.0;
  Cmp state = Cmp::Within;
  std::string cited_result;  // set when the condition is violated
};

/// Every applicable condition, in order (i), (ii), (iii), (iv)... When (i)
/// fails only (i) is listed: the later ones need the roots of G = μ.
std::vector<ConditionEntry> necessary_condition_trace(const ProblemParams& params,
                                                      const ComparisonPolicy& policy = {});

/// Existence / nonexistence of positive solutions on |x| > 1 (θ = m).
Verdict classify(const ProblemParams& params, const ComparisonPolicy& policy = {});

/// Nonexistence for the general operator class with Hardy weight |x|^{-θ}.
/// Returns "(i)".."(iv)" for the first matching case.
std::optional<std::string> nonexistence_general(const ProblemParams& params,
                                                const ComparisonPolicy& policy = {});

struct LocalNonexistence {
  bool holds = false;
  std::string tag;
};

/// Nonexistence for  -Δ_m u - μ|x|^{-m}u^{m-1} >= C|x|^{-σ}u^q. Requires
/// μ <= C_H (NoRealRoots otherwise).
LocalNonexistence local_nonexistence(double q, double sigma, double mu, int N, double m,
                                     const ComparisonPolicy& policy = {});

/// Independent re-check of the hypotheses of the result cited by a witness.
/// Non-strict hypotheses are accepted up to the band.
bool witness_hypothesis_holds(const std::string& cited_result, const ProblemParams& params,
                              const ComparisonPolicy& policy = {});

}  // namespace chq
