#include "chq/beta.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chq/quadrature.hpp"
#include "chq/special.hpp"

namespace chq {

NoRealRoots::NoRealRoots(double mu, double hardy)
    : Error("G(beta) = mu has no real roots: mu = " + std::to_string(mu) +
            " exceeds the Hardy constant " + std::to_string(hardy)) {}

double g_eval(double beta, int N, double m) {
  if (beta == 0.0) return 0.0;
  // β|β|^{m-2} = sign(β)|β|^{m-1}
  const double signed_pow = std::copysign(std::pow(std::abs(beta), m - 1.0), beta);
  return -signed_pow * (beta * (m - 1.0) + (N - m));
}

double g_derivative(double beta, int N, double m) {
  const double slope = m * beta + (N - m);
  if (beta == 0.0) {
    if (m > 2.0 || slope == 0.0) return 0.0;
    if (m == 2.0) return -(m - 1.0) * slope;
    return slope > 0 ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
  }
  return -(m - 1.0) * std::pow(std::abs(beta), m - 2.0) * slope;
}

double beta_star(int N, double m) { return (m - N) / m; }

namespace {

constexpr int kMaxIterations = 200;

// Solves G(β) = μ on a bracket [lo, hi] where G - μ changes sign, G monotone.
// Safeguarded Newton: a Newton step is taken only if it lands strictly inside
// the current bracket, otherwise bisect.
double solve_monotone(int N, double m, double mu, double lo, double hi) {
  auto h = [&](double b) { return g_eval(b, N, m) - mu; };
  double h_lo = h(lo);
  double x = 0.5 * (lo + hi);
  const double f_tol = 1e-12 * (1.0 + std::abs(mu));
  double best = x, best_abs = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    const double hx = h(x);
    if (std::abs(hx) < best_abs) {
      best_abs = std::abs(hx);
      best = x;
    }
    const double width = hi - lo;
    if (std::abs(hx) <= f_tol && width <= 1e-13 * (1.0 + std::abs(x))) return x;
    if (hx == 0.0) return x;
    if ((hx < 0) == (h_lo < 0)) {
      lo = x;
      h_lo = hx;
    } else {
      hi = x;
    }
    if (!(hi - lo > 0.0) || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x))
      return std::abs(hx) <= best_abs ? x : best;
    const double d = g_derivative(x, N, m);
    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(d) && d != 0.0) next = x - hx / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    // Newton converging from one side never moves the far bracket end.
    if (it % 4 == 3) next = 0.5 * (lo + hi);
    x = next;
  }
  return best;
}

}  // namespace

BetaRoots solve_beta_roots(int N, double m, double mu, const ComparisonPolicy& policy) {
  const double hardy = hardy_constant(N, m);
  BetaRoots roots;
  roots.beta_star = beta_star(N, m);
  if (mu > hardy + policy.boundary_band) throw NoRealRoots(mu, hardy);
  if (std::abs(mu - hardy) <= policy.boundary_band) {
    roots.beta_minus = roots.beta_plus = roots.beta_star;
    roots.degenerate = true;
    roots.residual_minus = roots.residual_plus = std::abs(g_eval(roots.beta_star, N, m) - mu);
    return roots;
  }
  double span = 1.0;
  while (g_eval(roots.beta_star - span, N, m) >= mu) span *= 2.0;
  roots.beta_minus = solve_monotone(N, m, mu, roots.beta_star - span, roots.beta_star);
  span = 1.0;
  while (g_eval(roots.beta_star + span, N, m) >= mu) span *= 2.0;
  roots.beta_plus = solve_monotone(N, m, mu, roots.beta_star, roots.beta_star + span);
  roots.residual_minus = std::abs(g_eval(roots.beta_minus, N, m) - mu);
  roots.residual_plus = std::abs(g_eval(roots.beta_plus, N, m) - mu);
  return roots;
}

RootSigns sign_classification(const BetaRoots&, int N, double m, double mu) {
  if (N > m) return RootSigns::BothNonpositive;
  if (mu < 0.0) return RootSigns::StraddleZero;
  return RootSigns::BothNonnegative;
}

const char* to_string(RootSigns signs) {
  switch (signs) {
    case RootSigns::BothNonpositive: return "both_nonpositive";
    case RootSigns::StraddleZero: return "straddle_zero";
    case RootSigns::BothNonnegative: return "both_nonnegative";
  }
  return "unknown";
}

double RadialBump::value(double r) const {
  const double x = (r - center) / half_width;
  if (!(std::abs(x) < 1.0)) return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - x * x));
}

double RadialBump::derivative(double r) const {
  const double x = (r - center) / half_width;
  if (!(std::abs(x) < 1.0)) return 0.0;
  const double denom = 1.0 - x * x;
  return value(r) * (-2.0 * x / (denom * denom)) / half_width;
}

HardySides hardy_check(const RadialBump& phi, int N, double m, double rel_tol) {
  HardySides out;
  if (phi.amplitude == 0.0) return out;
  const double lo = phi.center - phi.half_width, hi = phi.center + phi.half_width;
  if (!(lo > 0.0)) throw DomainError("phi", "support must stay away from the origin");
  const double area = sphere_area(N - 1);
  auto grad = [&](double r) {
    return std::pow(std::abs(phi.derivative(r)), m) * std::pow(r, N - 1);
  };
  auto weighted = [&](double r) {
    return std::pow(std::abs(phi.value(r)), m) * std::pow(r, N - 1 - m);
  };
  // Split at the centre where φ' vanishes (|φ'|^m is not smooth there for m < 2).
  auto lhs = quad::gauss_kronrod(grad, lo, phi.center, 0.0, rel_tol);
  lhs += quad::gauss_kronrod(grad, phi.center, hi, 0.0, rel_tol);
  auto rhs = quad::gauss_kronrod(weighted, lo, hi, 0.0, rel_tol);
  if (!lhs.converged || !rhs.converged)
    throw QuadratureFailure("hardy_check: adaptive refinement did not reach tolerance");
  out.lhs = area * lhs.value;
  out.rhs = hardy_constant(N, m) * area * rhs.value;
  return out;
}

}  // namespace chq
