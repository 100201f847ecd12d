#include "chq/radial.hpp"

#include <cmath>

#include "chq/beta.hpp"

namespace chq {

RadialProfile RadialProfile::power(double kappa, double gamma) {
  RadialProfile p;
  p.kind = ProfileKind::Power;
  p.kappa = kappa;
  p.gamma = gamma;
  return p;
}

RadialProfile RadialProfile::power_log(double kappa, double gamma, double tau, double s) {
  RadialProfile p;
  p.kind = ProfileKind::PowerLog;
  p.kappa = kappa;
  p.gamma = gamma;
  p.tau = tau;
  p.s = s;
  return p;
}

void RadialProfile::validate() const {
  std::vector<Violation> v;
  if (!(kappa > 0.0) || !std::isfinite(kappa)) v.push_back({"kappa", "kappa > 0 required"});
  if (!std::isfinite(gamma)) v.push_back({"gamma", "gamma must be finite"});
  if (kind == ProfileKind::PowerLog) {
    if (!(s > 1.0)) v.push_back({"s", "s > 1 required"});
    if (!(gamma < 0.0)) v.push_back({"gamma", "gamma < 0 required for power-log profiles"});
    if (!std::isfinite(tau)) v.push_back({"tau", "tau must be finite"});
    if (s > 1.0 && gamma < 0.0 && !(std::abs(gamma) * std::log(s) > tau))
      v.push_back({"s", "|gamma| log s > tau required"});
  }
  if (!v.empty()) throw DomainError(std::move(v));
}

double RadialProfile::value(double r) const {
  const double base = kappa * std::pow(r, gamma);
  if (kind == ProfileKind::Power) return base;
  return base * std::pow(std::log(s * r), tau);
}

double RadialProfile::derivative(double r) const {
  if (kind == ProfileKind::Power) return kappa * gamma * std::pow(r, gamma - 1.0);
  const double L = std::log(s * r);
  return kappa * std::pow(r, gamma - 1.0) * std::pow(L, tau - 1.0) * (gamma * L + tau);
}

RadialProfile RadialProfile::with_kappa(double k) const {
  RadialProfile p = *this;
  p.kappa = k;
  return p;
}

double operator_power(const RadialProfile& profile, int N, double m, double mu, double r) {
  return std::pow(profile.kappa, m - 1.0) * (g_eval(profile.gamma, N, m) - mu) *
         std::pow(r, profile.gamma * (m - 1.0) - m);
}

ExpansionCoefficients expansion_coefficients(double gamma, double tau, int N, double m,
                                             double mu) {
  if (!(gamma < 0.0)) throw DomainError("gamma", "gamma < 0 required");
  const double g = std::abs(gamma);
  const double nm = N - m;
  ExpansionCoefficients e;
  e.a = g * (gamma * (m - 1.0) + nm);
  e.b = -tau * (2.0 * gamma * (m - 1.0) + nm);
  e.c = -tau * (tau - 1.0) * (m - 1.0);
  e.A = g_eval(gamma, N, m) - mu;
  e.B = -tau * g * (m - 1.0) * (m * gamma + nm);
  e.C = std::pow(g, m - 4.0) *
        (e.c * gamma * gamma + e.b * gamma * tau * (m - 2.0) +
         0.5 * (m - 2.0) * (m - 3.0) * e.a * tau * tau);
  return e;
}

double operator_powerlog_exact(const RadialProfile& profile, int N, double m, double mu,
                               double r) {
  if (profile.kind != ProfileKind::PowerLog)
    return operator_power(profile, N, m, mu, r);
  profile.validate();
  const auto e = expansion_coefficients(profile.gamma, profile.tau, N, m, mu);
  const double L = std::log(profile.s * r);
  const double slope = std::abs(profile.gamma) - profile.tau / L;
  const double bracket =
      -mu + std::pow(slope, m - 2.0) * (e.a + e.b / L + e.c / (L * L));
  return std::pow(profile.kappa, m - 1.0) * std::pow(r, profile.gamma * (m - 1.0) - m) *
         std::pow(L, profile.tau * (m - 1.0)) * bracket;
}

double operator_exact(const RadialProfile& profile, int N, double m, double mu, double r) {
  return profile.kind == ProfileKind::Power ? operator_power(profile, N, m, mu, r)
                                            : operator_powerlog_exact(profile, N, m, mu, r);
}

namespace {

struct FdParts {
  double value;
  double scale;
};

FdParts fd_stencil(const std::function<double(double)>& u, int N, double m, double mu, double r,
                   double h) {
  auto flux = [&](double x, double du) {
    return std::pow(x, N - 1) * std::pow(std::abs(du), m - 2.0) * du;
  };
  const double u0 = u(r);
  const double du_plus = (u(r + h) - u0) / h;   // u' at r + h/2
  const double du_minus = (u0 - u(r - h)) / h;  // u' at r - h/2
  const double f_plus = flux(r + 0.5 * h, du_plus);
  const double f_minus = flux(r - 0.5 * h, du_minus);
  const double diffusion = -std::pow(r, 1 - N) * (f_plus - f_minus) / h;
  const double hardy = -mu * std::pow(r, -m) * std::pow(u0, m - 1.0);
  const double natural = std::pow(r, 1 - N) * 0.5 * (std::abs(f_plus) + std::abs(f_minus)) / r;
  return {diffusion + hardy, std::abs(diffusion) + std::abs(hardy) + natural};
}

}  // namespace

double fd_radial_operator(const std::function<double(double)>& u, int N, double m, double mu,
                          double r, double h, double rel_tol) {
  if (!(h > 0.0) || h > 1e-3 * r) throw DomainError("h", "0 < h <= 1e-3 r required");
  const auto coarse = fd_stencil(u, N, m, mu, r, h);
  const auto fine = fd_stencil(u, N, m, mu, r, 0.5 * h);
  if (std::abs(coarse.value - fine.value) > 10.0 * rel_tol * coarse.scale)
    throw OracleSingularity("fd_radial_operator: step h and h/2 disagree at r = " +
                            std::to_string(r));
  return coarse.value;
}

bool check_c1_integrability(const RadialProfile& profile, int, double alpha, double p) {
  return alpha + p * profile.gamma < 0.0;
}

}  // namespace chq
