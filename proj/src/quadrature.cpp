#include "chq/quadrature.hpp"

#include <numbers>

namespace chq::quad::detail {

namespace {

constexpr int kMaxLevels = 9;
constexpr double kTMax = 6.5;

DeNode node_at(double t) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  const double u = half_pi * std::sinh(t);
  const double e = std::exp(-2.0 * u);
  const double delta = 2.0 * e / (1.0 + e);  // 1 - tanh(u)
  const double cu = std::cosh(u);
  const double weight = half_pi * std::cosh(t) / (cu * cu);
  return {delta, weight};
}

std::vector<DeLevel> build() {
  std::vector<DeLevel> levels(kMaxLevels);
  double h = kDeH0;
  for (int k = 1; k * h <= kTMax; ++k) levels[0].nodes.push_back(node_at(k * h));
  for (int level = 1; level < kMaxLevels; ++level) {
    h *= 0.5;
    for (int k = 1; k * h <= kTMax; k += 2) levels[level].nodes.push_back(node_at(k * h));
  }
  for (auto& level : levels) {
    std::erase_if(level.nodes, [](const DeNode& n) { return !(n.delta > 0.0) || n.weight == 0.0; });
  }
  return levels;
}

}  // namespace

const std::vector<DeLevel>& de_levels() {
  static const std::vector<DeLevel> levels = build();
  return levels;
}

double de_center_weight() { return 0.5 * std::numbers::pi; }

}  // namespace chq::quad::detail
