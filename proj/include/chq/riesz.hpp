#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "chq/model.hpp"
#include "chq/radial.hpp"

namespace chq {

/// Γ(x) based Riesz constant A_α = Γ((N-α)/2) / (Γ(α/2) π^{N/2} 2^α).
double riesz_constant(int N, double alpha);

/// For ρ >= start:  c_lo ρ^e log^τ(sρ) <= f(ρ) <= c_hi ρ^e log^τ(sρ).
struct TailModel {
  double start = 1.0;
  double exponent = -1.0;
  double log_power = 0.0;
  double s = 2.718281828459045;
  double c_lo = 1.0;
  double c_hi = 1.0;
};

/// A nonnegative radial function on (1, ∞). Either compactly supported
/// (support_end finite) or carrying a certified power/power-log tail model.
/// `amplitude` is factored out of the quadrature: the convolution of
/// (amplitude·f)^p is amplitude^p times that of f^p.
class RadialDensity {
 public:
  static RadialDensity from_profile(const RadialProfile& profile);
  static RadialDensity indicator(double lo, double hi, double height = 1.0);
  /// Log-log linear interpolation through (radii, values) continued by the
  /// exact power tail values.back() * (ρ / radii.back())^{tail_exponent}.
  static RadialDensity tabulated(std::vector<double> radii, std::vector<double> values,
                                 double tail_exponent);
  static RadialDensity custom(std::function<double(double)> f, double support_end,
                              std::optional<TailModel> tail,
                              std::vector<double> breakpoints = {});

  double operator()(double rho) const { return shape_(rho); }
  double amplitude() const { return amplitude_; }
  double support_end() const { return support_end_; }
  const std::optional<TailModel>& tail() const { return tail_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  RadialDensity scaled(double factor) const;

 private:
  std::function<double(double)> shape_;
  double amplitude_ = 1.0;
  double support_end_ = std::numeric_limits<double>::infinity();
  std::optional<TailModel> tail_;
  std::vector<double> breakpoints_;
};

/// Enclosure [lower, upper] of (I_α * f^p)(r), or a divergence marker.
struct RieszValue {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool divergent = false;
  double truncation_radius = 0.0;
  int evals = 0;
};

/// Numerical radial Riesz convolution over |y| > 1 with a closed-form tail
/// enclosure beyond a truncation radius. Returns divergent when
/// α + p·(tail exponent) >= 0. Throws QuadratureFailure when the relative
/// width (upper - lower)/lower cannot be brought below tol.
RieszValue riesz_convolve_radial(const RadialDensity& f, int N, double alpha, double p, double r,
                                 double tol = 1e-6);

/// A_α 2^{α-N} M r^{α-N} with M = ∫_{3/2<|y|<2} f; a lower bound for
/// (I_α * f)(r) when r >= 2.
double lower_bound_far(const RadialDensity& f, int N, double alpha, double r);

struct PowerLowerBound {
  double exponent = 0.0;
  double constant = 0.0;
  double evaluate(double r) const;
};

/// Explicit lower bound C r^{α+pβ} for I_α * f^p when f >= c ρ^β and α + pβ < 0,
/// from the region |y| >= 2|x| where |x - y| <= (3/2)|y|.
PowerLowerBound power_lower_bound(double c, double beta, int N, double alpha, double p);

enum class BoundCase { PowerCase, CriticalLogCase, FarFieldCase };
const char* to_string(BoundCase c);

/// C r^{exponent} log^{log_power}(s r), valid for all r >= 1.
struct PowerBound {
  BoundCase case_tag = BoundCase::PowerCase;
  double exponent = 0.0;
  double log_power = 0.0;
  double constant = 0.0;
  double s = 2.718281828459045;
  double evaluate(double r) const;
};

/// Explicit upper bound for I_α * f^p when f <= c ρ^γ log^τ(sρ), τ >= 0 > γ,
/// s > 1 and α + pγ < 0, from the three-region split |y| >= 2|x|,
/// |x|/2 <= |y| <= 2|x|, |y| <= |x|/2.
PowerBound power_upper_bounds(double c, double gamma, double tau, double s, int N, double alpha,
                              double p);

namespace kernel {

enum class Method { Auto, ClosedForm, Series, Quadrature };

/// S_N(r, ρ) = ∫_{S^{N-1}} |r e - ρ σ|^{α-N} dσ, with D = |r - ρ| passed
/// separately so it keeps full relative precision near the diagonal.
double spherical(int N, double alpha, double r, double rho, double D, Method method = Method::Auto);

/// Bound E with |F(a,b;c;z) - 1| <= E for 0 <= z <= z_max, where F is the
/// hypergeometric series of the spherical mean.
double spherical_mean_deviation(int N, double alpha, double z_max);

}  // namespace kernel

}  // namespace chq
