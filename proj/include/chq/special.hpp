#pragma once

#include <array>
#include <span>

namespace chq {

/// Lanczos coefficients (g = 7, 9 terms).
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

/// Lanczos approximation with an explicit coefficient table. Exposed so the
/// self-test can run the Γ suite against a perturbed table.
double lanczos_gamma(double x, std::span<const double> coefficients, double g = kLanczosG);

/// Γ(x) for x > 0, relative error below 1e-12.
double gamma_fn(double x);

/// Surface area of the unit sphere S^k in R^{k+1}; sphere_area(0) = 2.
double sphere_area(int k);

}  // namespace chq
