#include "chq/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace chq {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Exists: return "exists";
    case Outcome::NotExists: return "not_exists";
    case Outcome::Boundary: return "boundary";
  }
  return "unknown";
}

namespace {

// Which case of the general nonexistence theorem covers a q-type violation
// once q <= m-1 is known.
std::string general_case_for(const ProblemParams& P, double band) {
  const double excess = P.p + P.q - (P.m - 1.0);
  if (excess > band) return "Thm 3.3(i)";
  if (excess >= -band) return "Thm 3.3(iii)";
  return "Thm 3.3(iv)";
}

ConditionEntry make_entry(std::string id, std::string formula, double margin,
                          const ComparisonPolicy& policy) {
  ConditionEntry e;
  e.condition = std::move(id);
  e.formula = std::move(formula);
  e.margin = margin;
  e.state = compare(margin, policy);
  e.satisfied = e.state == Cmp::Above;
  return e;
}

}  // namespace

std::vector<ConditionEntry> necessary_condition_trace(const ProblemParams& P,
                                                      const ComparisonPolicy& policy) {
  check_params(P);
  const double band = policy.boundary_band;
  const int N = P.N;
  const double m = P.m;
  const double CH = hardy_constant(N, m);
  const bool high_dim = N > m;
  std::vector<ConditionEntry> trace;

  if (high_dim) {
    auto e = make_entry("(i)", "mu <= C_H", CH - P.mu, policy);
    // μ = C_H is admissible; the band only absorbs rounding in μ.
    if (e.state == Cmp::Within) {
      e.state = Cmp::Above;
      e.satisfied = true;
    }
    if (!e.satisfied) e.cited_result = "Prop 2.2";
    trace.push_back(e);
    if (!e.satisfied) return trace;
  } else {
    auto e = make_entry("(i)", "mu < 0", -P.mu, policy);
    if (e.state == Cmp::Below) e.cited_result = P.mu > CH ? "Prop 2.2" : "Prop 4.2(i1)";
    trace.push_back(e);
    if (e.state != Cmp::Above) return trace;
  }

  const BetaRoots roots = solve_beta_roots(N, m, P.mu, policy);
  const double bm = std::abs(roots.beta_minus);
  const double gap = N - m - P.alpha;

  auto ii = make_entry("(ii)", "p > alpha/|beta-|", P.p - P.alpha / bm, policy);
  if (ii.state == Cmp::Below) ii.cited_result = high_dim ? "Prop 4.2(ii1)" : "Prop 4.2(i2)";
  trace.push_back(ii);

  auto iii = make_entry("(iii)", "p + q > m - 1 + (m + alpha)/|beta-|",
                        P.p + P.q - (m - 1.0 + (m + P.alpha) / bm), policy);
  if (iii.state == Cmp::Below)
    iii.cited_result = P.p + P.q >= m - 1.0 - band ? "Prop 4.1(ii)" : "Thm 3.3(iv)";
  trace.push_back(iii);

  auto q_type = [&](ConditionEntry& e, bool sliver_applies) {
    if (e.state != Cmp::Below) return;
    e.cited_result = sliver_applies && P.q > m - 1.0 ? "Prop 4.1(i)" : general_case_for(P, band);
  };

  if (!high_dim) {
    auto iv = make_entry("(iv)", "q > m - 1 - (N - m - alpha)/|beta-|",
                         P.q - (m - 1.0 - gap / bm), policy);
    q_type(iv, true);
    trace.push_back(iv);
    return trace;
  }

  const Cmp branch = compare(-gap, policy);  // sign of α - (N - m)
  if (branch == Cmp::Above) {
    auto iv = make_entry("(iv)1", "q > m - 1 - (N - m - alpha)/|beta-|",
                         P.q - (m - 1.0 - gap / bm), policy);
    q_type(iv, true);
    trace.push_back(iv);
  } else if (branch == Cmp::Within) {
    auto iv = make_entry("(iv)2", "q >= m - 1", P.q - (m - 1.0), policy);
    q_type(iv, false);
    trace.push_back(iv);
  } else {
    auto iv3 = make_entry("(iv)3", "q > m - 1 - (N - m - alpha) p / N",
                          P.q - (m - 1.0 - gap * P.p / N), policy);
    q_type(iv3, false);
    trace.push_back(iv3);
    if (P.mu > 0.0) {
      auto iv4 = make_entry("(iv)4", "q > m - 1 - (N - m - alpha)/|beta+|",
                            P.q - (m - 1.0 - gap / std::abs(roots.beta_plus)), policy);
      if (iv4.state == Cmp::Below) iv4.cited_result = "Prop 4.2(ii2)";
      trace.push_back(iv4);
    }
  }
  return trace;
}

Verdict classify(const ProblemParams& params, const ComparisonPolicy& policy) {
  Verdict v;
  for (const auto& e : necessary_condition_trace(params, policy)) {
    if (e.state == Cmp::Below)
      v.witnesses.push_back({e.condition, e.cited_result, e.margin});
    else if (e.state == Cmp::Within)
      v.boundary_conditions.push_back(e.condition);
  }
  if (!v.witnesses.empty())
    v.outcome = Outcome::NotExists;
  else if (!v.boundary_conditions.empty())
    v.outcome = Outcome::Boundary;
  else
    v.outcome = Outcome::Exists;
  return v;
}

namespace {

bool general_case_holds(const std::string& tag, const ProblemParams& P, double band) {
  const double k = std::min(P.theta, P.m);
  const double pq = P.p + P.q - (P.m - 1.0);
  const double line = P.m - 1.0 + (k + P.alpha - P.N) / P.N * P.p;
  if (tag == "(i)") return pq > 0.0 && P.q <= P.m - 1.0 + band && P.q < line;
  if (tag == "(ii)") return pq > 0.0 && P.q < P.m - 1.0 && std::abs(P.q - line) <= band;
  if (tag == "(iii)") return std::abs(pq) <= band && k > -P.alpha;
  if (tag == "(iv)") return pq < 0.0 && k >= -P.alpha;
  return false;
}

}  // namespace

std::optional<std::string> nonexistence_general(const ProblemParams& P,
                                                const ComparisonPolicy& policy) {
  check_params(P);
  for (const char* tag : {"(i)", "(ii)", "(iii)", "(iv)"})
    if (general_case_holds(tag, P, policy.boundary_band)) return tag;
  return std::nullopt;
}

LocalNonexistence local_nonexistence(double q, double sigma, double mu, int N, double m,
                                     const ComparisonPolicy& policy) {
  const double band = policy.boundary_band;
  const BetaRoots roots = solve_beta_roots(N, m, mu, policy);
  const double shift = q - m + 1.0;
  if (shift >= -band) {
    if (sigma <= roots.beta_minus * shift + m + band) return {true, "(i)"};
    return {};
  }
  const double line = roots.beta_plus * shift + m;
  if (!roots.degenerate) {
    if (sigma <= line + band) return {true, "(ii)"};
    return {};
  }
  if (sigma < line - band) return {true, "(iii)"};
  if (q >= -1.0 - band && std::abs(sigma - line) <= band) return {true, "(iv)"};
  return {};
}

bool witness_hypothesis_holds(const std::string& id, const ProblemParams& P,
                              const ComparisonPolicy& policy) {
  const double band = policy.boundary_band;
  const int N = P.N;
  const double m = P.m;
  const double CH = hardy_constant(N, m);
  const bool high_dim = N > m;

  if (id == "Prop 2.2") return P.mu > CH + band;
  if (id.rfind("Thm 3.3", 0) == 0) {
    return general_case_holds(id.substr(7), P, band);
  }
  if (id == "Prop 4.2(i1)") return !high_dim && P.mu >= -band && P.mu <= CH + band;
  if (P.mu > CH + band) return false;

  const BetaRoots roots = solve_beta_roots(N, m, P.mu, policy);
  const double bm = std::abs(roots.beta_minus);
  const double gap = N - m - P.alpha;
  if (id == "Prop 4.2(i2)") return !high_dim && P.mu < 0.0 && P.p <= P.alpha / bm + band;
  if (id == "Prop 4.2(ii1)") return high_dim && P.p <= P.alpha / bm + band;
  if (id == "Prop 4.2(ii2)")
    return high_dim && P.mu > 0.0 && gap > 0.0 &&
           P.q <= m - 1.0 - gap / std::abs(roots.beta_plus) + band;
  if (id == "Prop 4.1(i)")
    return gap < 0.0 && P.q > m - 1.0 && P.q <= m - 1.0 - gap / bm + band;
  if (id == "Prop 4.1(ii)") {
    const double s = P.p + P.q;
    return s >= m - 1.0 - band && s <= m - 1.0 + (m + P.alpha) / bm + band;
  }
  return false;
}

}  // namespace chq
