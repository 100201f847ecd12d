#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "chq/classifier.hpp"

using namespace chq;

namespace {

ProblemParams params(int N, double m, double p, double q, double alpha, double mu) {
  ProblemParams P{N, m, p, q, alpha, mu, m};
  check_params(P);
  return P;
}

bool cites(const Verdict& v, const std::string& result) {
  return std::any_of(v.witnesses.begin(), v.witnesses.end(),
                     [&](const Witness& w) { return w.cited_result == result; });
}

}  // namespace

TEST(Classify, HighDimensionExists) {
  const auto v = classify(params(3, 2, 3, 3, 2, 0));
  EXPECT_EQ(v.outcome, Outcome::Exists);
  EXPECT_TRUE(v.witnesses.empty());
}

TEST(Classify, QThresholdViolated) {
  const auto v = classify(params(3, 2, 4, 1.9, 2, 0));
  ASSERT_EQ(v.outcome, Outcome::NotExists);
  ASSERT_EQ(v.witnesses.size(), 1u);
  EXPECT_EQ(v.witnesses[0].condition, "(iv)1");
  EXPECT_EQ(v.witnesses[0].cited_result, "Prop 4.1(i)");
}

TEST(Classify, QExactlyOnThresholdIsBoundary) {
  // q = 2 and p + q = 5 sit exactly on their strict thresholds, so both
  // fall inside the indeterminacy band rather than flipping silently.
  const auto v = classify(params(3, 2, 3, 2, 2, 0));
  EXPECT_EQ(v.outcome, Outcome::Boundary);
  EXPECT_EQ(v.boundary_conditions, (std::vector<std::string>{"(iii)", "(iv)1"}));
  EXPECT_EQ(classify(params(3, 2, 4, 2, 2, 0)).boundary_conditions,
            std::vector<std::string>{"(iv)1"});
  const auto strict = classify(params(3, 2, 3, 2 - 1e-6, 2, 0));
  EXPECT_EQ(strict.outcome, Outcome::NotExists);
  EXPECT_TRUE(cites(strict, "Prop 4.1(i)"));
}

TEST(Classify, LowDimensionExists) {
  EXPECT_EQ(classify(params(2, 2, 2, 3, 1, -1)).outcome, Outcome::Exists);
}

TEST(Classify, LowDimensionNonnegativeMu) {
  auto v = classify(params(2, 3, 2, 3, 1, 0.01));
  ASSERT_EQ(v.outcome, Outcome::NotExists);
  EXPECT_TRUE(cites(v, "Prop 4.2(i1)"));
  v = classify(params(2, 2, 2, 3, 1, 0.0));
  EXPECT_TRUE(cites(v, "Prop 4.2(i1)") || v.outcome == Outcome::Boundary);
  // For N = m the Hardy constant is 0, so μ = 0.1 is already above it.
  v = classify(params(2, 2, 2, 3, 1, 0.1));
  ASSERT_EQ(v.outcome, Outcome::NotExists);
  EXPECT_TRUE(cites(v, "Prop 2.2"));
}

TEST(Classify, AboveHardyConstant) {
  const auto v = classify(params(3, 2, 3, 3, 2, 0.3));
  ASSERT_EQ(v.outcome, Outcome::NotExists);
  EXPECT_TRUE(cites(v, "Prop 2.2"));
  const auto low = classify(params(1, 3, 3, 3, 0.5, 0.5));
  EXPECT_TRUE(cites(low, "Prop 2.2"));
}

TEST(Classify, HardyConstantItselfAdmissible) {
  EXPECT_EQ(classify(params(3, 2, 5, 5, 2, 0.25)).outcome, Outcome::Exists);
}

TEST(Trace, ExistsHasPositiveMargins) {
  for (const auto& e : necessary_condition_trace(params(3, 2, 3, 3, 2, 0))) {
    EXPECT_GT(e.margin, 0.0) << e.condition;
    EXPECT_TRUE(e.satisfied);
  }
}

TEST(Trace, SingleViolation) {
  // p alone drops below α/|β⁻| = 2; p+q = 5.4 > 5 and q = 3.5 > 2 still hold.
  const auto trace = necessary_condition_trace(params(3, 2, 1.9, 3.5, 2, 0));
  int nonpositive = 0;
  for (const auto& e : trace)
    if (e.margin <= 0) {
      ++nonpositive;
      EXPECT_EQ(e.condition, "(ii)");
      EXPECT_EQ(e.cited_result, "Prop 4.2(ii1)");
    }
  EXPECT_EQ(nonpositive, 1);
}

TEST(Trace, AboveHardyListsOnlyFirstCondition) {
  const auto trace = necessary_condition_trace(params(3, 2, 3, 3, 2, 0.3));
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].condition, "(i)");
}

TEST(Trace, MarginSubcaseLabels) {
  auto ids = [](const ProblemParams& P) {
    std::vector<std::string> out;
    for (const auto& e : necessary_condition_trace(P)) out.push_back(e.condition);
    return out;
  };
  using V = std::vector<std::string>;
  EXPECT_EQ(ids(params(3, 2, 3, 3, 1, 0)), (V{"(i)", "(ii)", "(iii)", "(iv)2"}));
  EXPECT_EQ(ids(params(5, 2, 3, 3, 1, 0.2)), (V{"(i)", "(ii)", "(iii)", "(iv)3", "(iv)4"}));
  EXPECT_EQ(ids(params(5, 2, 3, 3, 1, -0.2)), (V{"(i)", "(ii)", "(iii)", "(iv)3"}));
  EXPECT_EQ(ids(params(2, 2, 3, 3, 1, -1)), (V{"(i)", "(ii)", "(iii)", "(iv)"}));
}

TEST(GeneralNonexistence, Cases) {
  ProblemParams a{3, 2, 0.5, 0.5, 1, 0, 2};
  EXPECT_EQ(nonexistence_general(a), "(iii)");
  ProblemParams b{3, 3, 0.5, 1, 1, 0, 5};
  EXPECT_EQ(nonexistence_general(b), "(iv)");
  ProblemParams c{3, 2, 3, 3, 2, 0, 2};
  EXPECT_FALSE(nonexistence_general(c).has_value());
  // q below m-1 and below the θ line: case (i).
  ProblemParams d{3, 2, 3, 0.5, 1, 0, 2};
  EXPECT_EQ(nonexistence_general(d), "(i)");
}

TEST(LocalNonexistence, Thresholds) {
  auto r = local_nonexistence(2, 1, 0, 3, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.tag, "(i)");
  r = local_nonexistence(0, 1.5, 3.0 / 16, 3, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.tag, "(ii)");
  EXPECT_FALSE(local_nonexistence(2, 3, 0, 3, 2).holds);
  EXPECT_THROW(local_nonexistence(2, 1, 0.3, 3, 2), NoRealRoots);
}

TEST(Properties, UpwardClosure) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dp(0.1, 8), dq(-2, 8), dd(0, 2);
  const ProblemParams backgrounds[] = {
      {3, 2, 1, 0, 2, 0, 2}, {5, 2, 1, 0, 1, 0.2, 2}, {2, 2, 1, 0, 1, -1, 2},
      {3, 1.5, 1, 0, 1.5, 0.3, 1.5}, {4, 3, 1, 0, 0.5, -2, 3}, {3, 2, 1, 0, 2, 0.25, 2}};
  for (const auto& base : backgrounds) {
    for (int k = 0; k < 400; ++k) {
      auto P = base;
      P.p = dp(rng);
      P.q = dq(rng);
      if (classify(P).outcome != Outcome::Exists) continue;
      auto Q = P;
      Q.p += dd(rng);
      Q.q += dd(rng);
      EXPECT_EQ(classify(Q).outcome, Outcome::Exists)
          << "p=" << P.p << " q=" << P.q << " -> p=" << Q.p << " q=" << Q.q;
    }
  }
}

TEST(Properties, WitnessSoundness) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> dn(1, 6);
  std::uniform_real_distribution<double> dm(1.2, 4), dp(0.05, 8), dq(-3, 8), du(-3, 1), da(0.05, 0.95);
  int checked = 0;
  for (int k = 0; k < 3000; ++k) {
    const int N = dn(rng);
    const double m = dm(rng);
    ProblemParams P{N, m, dp(rng), dq(rng), da(rng) * N, du(rng), m};
    const auto v = classify(P);
    if (v.outcome != Outcome::NotExists) continue;
    for (const auto& w : v.witnesses) {
      EXPECT_TRUE(witness_hypothesis_holds(w.cited_result, P))
          << w.cited_result << " N=" << N << " m=" << m << " p=" << P.p << " q=" << P.q
          << " alpha=" << P.alpha << " mu=" << P.mu;
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}
