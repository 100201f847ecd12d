#include "chq/model.hpp"

#include <cmath>

namespace chq {

namespace {

std::string join(const std::vector<Violation>& violations) {
  std::string out = "invalid parameters:";
  for (const auto& v : violations) out += " " + v.field + " (" + v.constraint + ");";
  return out;
}

void collect(const ProblemParams& p, std::vector<Violation>& out) {
  if (p.N < 1) out.push_back({"N", "N >= 1 required"});
  if (!std::isfinite(p.m) || !(p.m > 1.0)) out.push_back({"m", "m > 1 required"});
  if (!std::isfinite(p.p) || !(p.p > 0.0)) out.push_back({"p", "p > 0 required"});
  if (!std::isfinite(p.q)) out.push_back({"q", "q must be finite"});
  if (!std::isfinite(p.mu)) out.push_back({"mu", "mu must be finite"});
  if (!std::isfinite(p.theta)) out.push_back({"theta", "theta must be finite"});
  if (!std::isfinite(p.alpha) || !(p.alpha > 0.0))
    out.push_back({"alpha", "alpha > 0 required"});
  else if (!(p.alpha < static_cast<double>(p.N)))
    out.push_back({"alpha", "alpha < N required"});
}

}  // namespace

DomainError::DomainError(std::vector<Violation> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

DomainError::DomainError(std::string field, std::string constraint)
    : DomainError(std::vector<Violation>{{std::move(field), std::move(constraint)}}) {}

Cmp compare(double margin, const ComparisonPolicy& policy) {
  if (margin > policy.boundary_band) return Cmp::Above;
  if (margin < -policy.boundary_band) return Cmp::Below;
  return Cmp::Within;
}

ProblemParams validate_params(const std::map<std::string, double>& raw) {
  std::vector<Violation> violations;
  ProblemParams params;

  auto fetch = [&](const char* key, double& slot) {
    auto it = raw.find(key);
    if (it == raw.end()) {
      violations.push_back({key, "required"});
      return false;
    }
    slot = it->second;
    return true;
  };

  double n_value = 0.0;
  if (fetch("N", n_value)) {
    if (!std::isfinite(n_value) || n_value != std::floor(n_value) || n_value > 1e6) {
      violations.push_back({"N", "N must be an integer"});
    } else {
      params.N = static_cast<int>(n_value);
    }
  }
  fetch("m", params.m);
  fetch("p", params.p);
  fetch("q", params.q);
  fetch("alpha", params.alpha);
  fetch("mu", params.mu);
  if (auto it = raw.find("theta"); it != raw.end())
    params.theta = it->second;
  else
    params.theta = params.m;

  for (const auto& [key, value] : raw) {
    static const char* known[] = {"N", "m", "p", "q", "alpha", "mu", "theta"};
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) violations.push_back({key, "unknown parameter"});
    (void)value;
  }

  // Skip range checks on fields that were missing to avoid duplicate noise.
  std::vector<Violation> range;
  collect(params, range);
  for (auto& v : range) {
    bool already = false;
    for (const auto& w : violations) already = already || w.field == v.field;
    if (!already) violations.push_back(std::move(v));
  }
  if (!violations.empty()) throw DomainError(std::move(violations));
  return params;
}

void check_params(const ProblemParams& params) {
  std::vector<Violation> violations;
  collect(params, violations);
  if (!violations.empty()) throw DomainError(std::move(violations));
}

double hardy_constant(int N, double m) {
  return std::pow(std::abs((static_cast<double>(N) - m) / m), m);
}

}  // namespace chq
