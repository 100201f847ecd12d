#pragma once

#include <functional>

#include "chq/model.hpp"

namespace chq {

enum class ProfileKind { Power, PowerLog };

/// Radial candidate u(r) = κ r^γ (Power) or κ r^γ log^τ(s r) (PowerLog).
struct RadialProfile {
  ProfileKind kind = ProfileKind::Power;
  double kappa = 1.0;
  double gamma = -1.0;
  double tau = 0.0;
  double s = 2.718281828459045;

  static RadialProfile power(double kappa, double gamma);
  static RadialProfile power_log(double kappa, double gamma, double tau, double s);

  /// Throws DomainError unless κ > 0 and, for PowerLog, s > 1, γ < 0 and
  /// |γ| log s > τ (which keeps u positive and strictly decreasing on r >= 1).
  void validate() const;

  double value(double r) const;
  double derivative(double r) const;
  RadialProfile with_kappa(double k) const;
};

/// Coefficients of the power-log bracket identity (a, b, c) and of its
/// large-r expansion in powers of 1/log(sr) (A, B, C).
struct ExpansionCoefficients {
  double a = 0.0, b = 0.0, c = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
};

/// -Δ_m u - μ r^{-m} u^{m-1} for u = κ r^γ: κ^{m-1}(G(γ) - μ) r^{γ(m-1)-m}.
double operator_power(const RadialProfile& profile, int N, double m, double mu, double r);

ExpansionCoefficients expansion_coefficients(double gamma, double tau, int N, double m, double mu);

/// Exact value of the operator on a power-log profile through the bracket
/// identity κ^{m-1} r^{γ(m-1)-m} L^{τ(m-1)} [-μ + (|γ| - τ/L)^{m-2}(a + b/L + c/L²)],
/// L = log(sr).
double operator_powerlog_exact(const RadialProfile& profile, int N, double m, double mu, double r);

/// Dispatches on the profile kind.
double operator_exact(const RadialProfile& profile, int N, double m, double mu, double r);

/// The Richardson check of fd_radial_operator found h and h/2 disagreeing.
class OracleSingularity : public Error {
 public:
  using Error::Error;
};

/// Finite-difference oracle for -r^{1-N}(r^{N-1}|u'|^{m-2}u')' - μ r^{-m} u^{m-1}
/// with nested central differences of step h. The same stencil at h/2 must
/// agree to 10*rel_tol of the operator's scale, else OracleSingularity.
double fd_radial_operator(const std::function<double(double)>& u, int N, double m, double mu,
                          double r, double h, double rel_tol = 1e-4);

/// ∫ u^p / (1 + |y|^{N-α}) dy < ∞ on |y| > 1, i.e. α + pγ < 0.
bool check_c1_integrability(const RadialProfile& profile, int N, double alpha, double p);

}  // namespace chq
