#pragma once

#include "chq/model.hpp"

namespace chq {

/// μ exceeds the Hardy constant: G(β) = μ has no real solution.
class NoRealRoots : public Error {
 public:
  NoRealRoots(double mu, double hardy);
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// G(β) = -β|β|^{m-2}(β(m-1) + N - m), extended continuously by G(0) = 0.
double g_eval(double beta, int N, double m);

/// G'(β) = -(m-1)|β|^{m-2}(mβ + N - m); infinite at β = 0 when m < 2.
double g_derivative(double beta, int N, double m);

/// The maximiser (m-N)/m of G.
double beta_star(int N, double m);

struct BetaRoots {
  double beta_minus = 0.0;
  double beta_plus = 0.0;
  double beta_star = 0.0;
  bool degenerate = false;
  double residual_minus = 0.0;
  double residual_plus = 0.0;
};

/// Both solutions β⁻ <= β⁺ of G(β) = μ. A μ within the boundary band of
/// C_H is snapped to the double root β★. Throws NoRealRoots when μ exceeds
/// C_H by more than the band.
BetaRoots solve_beta_roots(int N, double m, double mu, const ComparisonPolicy& policy = {});

/// Guaranteed sign pattern of the roots.
///  BothNonpositive: N > m, so β⁻ <= β★ < 0 (β⁺ may be either sign).
///  StraddleZero:    N <= m and μ < 0, so β⁻ < 0 < β⁺.
///  BothNonnegative: N <= m and 0 <= μ <= C_H, so 0 <= β⁻ <= β★.
enum class RootSigns { BothNonpositive, StraddleZero, BothNonnegative };

RootSigns sign_classification(const BetaRoots& roots, int N, double m, double mu);

const char* to_string(RootSigns signs);

/// Smooth bump amplitude * exp(-1/(1 - ((r - center)/half_width)^2)),
/// supported on (center - half_width, center + half_width).
struct RadialBump {
  double center = 2.0;
  double half_width = 1.0;
  double amplitude = 1.0;

  double value(double r) const;
  double derivative(double r) const;
};

struct HardySides {
  double lhs = 0.0;  // ∫|∇φ|^m
  double rhs = 0.0;  // C_H ∫|φ|^m / |x|^m
};

/// Evaluates both sides of the Hardy inequality for a radial bump by radial
/// quadrature. Throws QuadratureFailure if refinement stalls.
HardySides hardy_check(const RadialBump& phi, int N, double m, double rel_tol = 1e-12);

}  // namespace chq
