#include "chq/special.hpp"

#include <cmath>
#include <numbers>

namespace chq {

double lanczos_gamma(double x, std::span<const double> c, double g) {
  constexpr double pi = std::numbers::pi;
  if (x < 0.5) return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x, c, g));
  x -= 1.0;
  double a = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (x + static_cast<double>(i));
  const double t = x + g + 0.5;
  // Split the power so t^(x+1/2) e^{-t} does not overflow before Γ does.
  const double half = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * pi) * a * half * (half * std::exp(-t));
}

double gamma_fn(double x) { return lanczos_gamma(x, kLanczosCoefficients); }

double sphere_area(int k) {
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / gamma_fn(h);
}

}  // namespace chq
