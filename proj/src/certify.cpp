#include "chq/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "chq/classifier.hpp"

namespace chq {

const char* to_string(Subcase s) {
  switch (s) {
    case Subcase::OneA: return "1a";
    case Subcase::OneB: return "1b";
    case Subcase::OneC: return "1c";
    case Subcase::OneD: return "1d";
    case Subcase::TwoLog: return "2";
  }
  return "unknown";
}

Subcase subcase_from_string(const std::string& s) {
  if (s == "1a") return Subcase::OneA;
  if (s == "1b") return Subcase::OneB;
  if (s == "1c") return Subcase::OneC;
  if (s == "1d") return Subcase::OneD;
  if (s == "2") return Subcase::TwoLog;
  throw DomainError("subcase", "one of 1a, 1b, 1c, 1d, 2");
}

GammaChoice choose_gamma(const ProblemParams& P, const BetaRoots& roots,
                         const ComparisonPolicy& policy) {
  const double band = policy.boundary_band;
  const double bm = roots.beta_minus, bp = roots.beta_plus;
  const double m = P.m, p = P.p, q = P.q;
  const double neg_np = -P.N / p;
  const double gap = P.N - m - P.alpha;
  GammaChoice c;
  c.lo = bm;
  if (neg_np <= bm + band) {
    c.subcase = Subcase::OneA;
    c.tie = std::abs(neg_np - bm) <= band;
    c.hi = std::min({bp, -P.alpha / p, -(m + P.alpha) / (p + q - m + 1.0)});
  } else if (-gap > band) {
    c.subcase = Subcase::OneB;
    if (!(q > m - 1.0)) throw EmptyInterval("subcase 1b needs q > m - 1");
    c.hi = std::min({bp, neg_np, gap / (q - m + 1.0)});
  } else if (q >= m - 1.0) {
    c.subcase = Subcase::OneC;
    c.hi = std::min(bp, neg_np);
  } else {
    c.subcase = Subcase::OneD;
    c.lo = std::max(bm, -gap / (m - 1.0 - q));
    c.hi = std::min(bp, neg_np);
  }
  if (!(c.hi > c.lo))
    throw EmptyInterval(std::string("empty gamma interval in subcase ") + to_string(c.subcase));
  c.gamma = 0.5 * (c.lo + c.hi);
  return c;
}

PowerLogChoice choose_powerlog(const ProblemParams& P, const BetaRoots& roots) {
  if (!roots.degenerate) throw DomainError("mu", "mu = C_H required");
  if (!(roots.beta_star < 0.0)) throw DomainError("N", "N > m required");
  PowerLogChoice c;
  c.tau = 1.0 / P.m;
  c.s0 = std::exp(2.0 * c.tau / std::abs(roots.beta_star));
  return c;
}

namespace {

constexpr int kKappaHalvings = 60;
constexpr int kSDoublings = 20;

// Everything verification needs, evaluated once at κ = 1. Scaling to any κ
// is then exact: LHS ~ κ^{m-1}, RHS ~ κ^{p+q}.
struct UnitEvaluation {
  std::vector<double> grid, lhs, rhs;
  bool c1_ok = false;
  bool exponent_ok = false;
  // log LHS and log of the explicit RHS bound at κ = 1 on radii beyond the
  // grid, out to where their ratio is decreasing.
  std::vector<double> tail_log_lhs, tail_log_rhs;
  std::string bound_case;
  std::string failure;
};

std::vector<double> log_grid(const VerifySettings& s) {
  if (!(s.r_min > 1.0) || !(s.r_max > s.r_min) || s.points < 2)
    throw DomainError("grid", "1 < r_min < r_max and points >= 2 required");
  std::vector<double> g(s.points);
  const double a = std::log(s.r_min), b = std::log(s.r_max);
  for (int i = 0; i < s.points; ++i) g[i] = std::exp(a + (b - a) * i / (s.points - 1));
  g.front() = s.r_min;
  g.back() = s.r_max;
  return g;
}

// Leading term of the operator on a power-log profile as L = log(sr) → ∞:
// (log power, coefficient).
std::pair<double, double> powerlog_leading(const RadialProfile& u, const ProblemParams& P) {
  const auto e = expansion_coefficients(u.gamma, u.tau, P.N, P.m, P.mu);
  const double base = u.tau * (P.m - 1.0);
  const double scale = std::abs(P.mu) + std::abs(e.a) + 1.0;
  if (std::abs(e.A) > 1e-12 * scale) return {base, e.A};
  if (std::abs(e.B) > 1e-12 * scale) return {base - 1.0, e.B};
  return {base - 2.0, e.C};
}

// The power-log bracket  -μ + (|γ| - τx)^{m-2}(a + bx + cx²), x = 1/L. For
// small x its Taylor series avoids the cancellation between -μ and the
// product when A = G(γ) - μ vanishes.
double powerlog_bracket(const RadialProfile& u, const ProblemParams& P, double L) {
  const auto e = expansion_coefficients(u.gamma, u.tau, P.N, P.m, P.mu);
  const double g = std::abs(u.gamma);
  const double x = 1.0 / L;
  if (x > 1e-2) return -P.mu + std::pow(g - u.tau * x, P.m - 2.0) * (e.a + e.b * x + e.c * x * x);
  const double lead = std::pow(g, P.m - 2.0);
  const double t = -u.tau / g;
  double sum = 0.0, xk = x;
  double gk2 = 0.0, gk1 = 1.0, gk = (P.m - 2.0) * t;  // binomial series of (1 + t x)^{m-2}
  for (int k = 1; k < 40; ++k) {
    const double ck = lead * (gk * e.a + gk1 * e.b + gk2 * e.c);
    sum += ck * xk;
    if (std::abs(ck * xk) <= 1e-18 * std::abs(sum) && k > 3) break;
    xk *= x;
    gk2 = gk1;
    gk1 = gk;
    gk *= (P.m - 2.0 - k) / (k + 1.0) * t;
  }
  return e.A + sum;
}

UnitEvaluation evaluate_unit(const ProblemParams& P, const RadialProfile& profile,
                             const VerifySettings& settings) {
  UnitEvaluation ev;
  const RadialProfile u = profile.with_kappa(1.0);
  u.validate();
  ev.grid = log_grid(settings);
  ev.c1_ok = check_c1_integrability(u, P.N, P.alpha, P.p);
  if (!ev.c1_ok) {
    ev.failure = "u^p is not integrable against the Riesz kernel";
    return ev;
  }

  const bool log_profile = u.kind == ProfileKind::PowerLog;
  const double tau = log_profile ? u.tau : 0.0;
  const PowerBound bound = power_upper_bounds(1.0, u.gamma, tau, u.s, P.N, P.alpha, P.p);
  ev.bound_case = to_string(bound.case_tag);
  const double e_lhs = u.gamma * (P.m - 1.0) - P.m;
  const double e_rhs = bound.exponent + P.q * u.gamma;
  double lhs_log = 0.0, lead = g_eval(u.gamma, P.N, P.m) - P.mu;
  if (log_profile) std::tie(lhs_log, lead) = powerlog_leading(u, P);
  const double rhs_log = bound.log_power + P.q * tau;
  const double d = e_lhs - e_rhs;
  const bool pure = lhs_log == 0.0 && rhs_log == 0.0;
  if (!(lead > 0.0)) {
    ev.failure = "operator is not eventually positive";
  } else if (d > 1e-12 * (1.0 + std::abs(e_lhs)) ||
             (pure && std::abs(d) <= 1e-12 * (1.0 + std::abs(e_lhs)))) {
    // Equal pure powers: both sides are multiples of the same r^e, so the
    // tail samples below compare the constants exactly.
    ev.exponent_ok = true;
  } else {
    ev.failure = "right-hand side decays no faster than the left-hand side";
  }

  if (ev.exponent_ok) {
    // log(RHS/LHS) has slope -d + k/L in log r, so it decreases once
    // L > 2k/d.
    const double k = std::max(0.0, rhs_log - lhs_log);
    const double L_min = std::log(u.s * settings.r_max);
    const double L_far =
        std::max(L_min * 1e3, d > 0.0 ? L_min + 2.0 * k / d : L_min);
    const int samples = 400;
    for (int j = 0; j < samples; ++j) {
      const double L = L_min * std::pow(L_far / L_min, j / (samples - 1.0));
      const double log_r = L - std::log(u.s);
      double log_lhs = e_lhs * log_r;
      if (log_profile) {
        const double bracket = powerlog_bracket(u, P, L);
        if (!(bracket > 0.0)) {
          ev.exponent_ok = false;
          ev.failure = "operator changes sign beyond the grid";
          break;
        }
        log_lhs += u.tau * (P.m - 1.0) * std::log(L) + std::log(bracket);
      } else {
        log_lhs += std::log(lead);
      }
      const double L_bound = std::log(bound.s) + log_r;
      double log_rhs = std::log(bound.constant) + bound.exponent * log_r + P.q * u.gamma * log_r;
      if (bound.log_power != 0.0) log_rhs += bound.log_power * std::log(L_bound);
      if (log_profile) log_rhs += P.q * u.tau * std::log(L);
      ev.tail_log_lhs.push_back(log_lhs);
      ev.tail_log_rhs.push_back(log_rhs);
    }
  }

  const RadialDensity density = RadialDensity::from_profile(u);
  const std::size_t n = ev.grid.size();
  ev.lhs.assign(n, 0.0);
  ev.rhs.assign(n, 0.0);
  auto work = [&](std::size_t i) {
    const double r = ev.grid[i];
    ev.lhs[i] = operator_exact(u, P.N, P.m, P.mu, r);
    const RieszValue v = riesz_convolve_radial(density, P.N, P.alpha, P.p, r, settings.tol);
    ev.rhs[i] = v.divergent ? std::numeric_limits<double>::infinity()
                            : v.upper * std::pow(u.value(r), P.q);
  };
  const int threads = std::max(1, std::min<int>(settings.threads, static_cast<int>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < n; i = next++) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
          next = n;
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return ev;
}

VerificationReport report_at(const UnitEvaluation& ev, const ProblemParams& P, double kappa) {
  VerificationReport rep;
  rep.grid = ev.grid;
  rep.kappa = kappa;
  rep.c1_ok = ev.c1_ok;
  rep.bound_case = ev.bound_case;
  rep.failure = ev.failure;
  if (!ev.c1_ok) {
    rep.min_margin = -std::numeric_limits<double>::infinity();
    return rep;
  }
  const double k_lhs = std::pow(kappa, P.m - 1.0);
  const double k_rhs = std::pow(kappa, P.p + P.q);
  rep.margins.resize(ev.grid.size());
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.grid.size(); ++i) {
    rep.margins[i] = k_lhs * ev.lhs[i] - k_rhs * ev.rhs[i];
    rep.min_margin = std::min(rep.min_margin, rep.margins[i]);
  }
  rep.asymptotic_ok = ev.exponent_ok;
  if (ev.exponent_ok) {
    const double shift = (P.m - 1.0 - P.p - P.q) * std::log(kappa);
    rep.tail_log_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ev.tail_log_lhs.size(); ++j)
      rep.tail_log_margin =
          std::min(rep.tail_log_margin, shift + ev.tail_log_lhs[j] - ev.tail_log_rhs[j]);
    if (!(rep.tail_log_margin >= 0.0)) {
      rep.asymptotic_ok = false;
      rep.failure = "explicit bound exceeds the left-hand side beyond the grid";
    }
  }
  rep.passed = rep.min_margin >= 0.0 && rep.asymptotic_ok && rep.c1_ok;
  if (!rep.passed && rep.failure.empty()) rep.failure = "negative margin on the grid";
  return rep;
}

struct Calibrated {
  double kappa = 0.0;
  VerificationReport report;
  bool ok = false;
};

Calibrated calibrate(const ProblemParams& P, const UnitEvaluation& ev,
                     std::vector<double>* history) {
  Calibrated out;
  double kappa = 1.0;
  for (int k = 0; k <= kKappaHalvings; ++k, kappa *= 0.5) {
    if (history) history->push_back(kappa);
    out.report = report_at(ev, P, kappa);
    if (out.report.passed) {
      out.kappa = kappa;
      out.ok = true;
      return out;
    }
    if (!ev.c1_ok || !ev.failure.empty()) break;  // no κ can repair these
  }
  return out;
}

// The bracket of the power-log identity is positive for every L >= log s.
bool powerlog_operator_positive(const ProblemParams& P, const RadialProfile& u) {
  const auto e = expansion_coefficients(u.gamma, u.tau, P.N, P.m, P.mu);
  if (!(e.C > 0.0)) return false;
  const double L0 = std::log(u.s);
  for (int j = 0; j <= 480; ++j) {
    const double L = L0 * std::pow(2.0, j / 16.0);
    if (!(std::abs(u.gamma) - u.tau / L > 0.0)) return false;
    if (!(powerlog_bracket(u, P, L) > 0.0)) return false;
  }
  return true;
}

}  // namespace

double calibrate_kappa(const ProblemParams& params, const RadialProfile& profile,
                       const VerifySettings& settings, std::vector<double>* history) {
  const auto ev = evaluate_unit(params, profile, settings);
  const auto c = calibrate(params, ev, history);
  if (!c.ok) throw BudgetExhausted("kappa calibration failed: " + c.report.failure);
  return c.kappa;
}

VerificationReport verify_supersolution(const ProblemParams& params, const Certificate& cert,
                                        const VerifySettings& settings) {
  cert.profile.validate();
  const auto ev = evaluate_unit(params, cert.profile, settings);
  return report_at(ev, params, cert.profile.kappa);
}

CertifiedSolution existence_certificate(const ProblemParams& P, const VerifySettings& settings,
                                        const ComparisonPolicy& policy) {
  const Verdict verdict = classify(P, policy);
  if (verdict.outcome != Outcome::Exists)
    throw Error(std::string("existence_certificate: parameters classify as ") +
                to_string(verdict.outcome));
  const BetaRoots roots = solve_beta_roots(P.N, P.m, P.mu, policy);
  CertifiedSolution out;
  Certificate& cert = out.certificate;
  cert.inherited_taxonomy = P.N <= P.m;

  if (roots.degenerate && P.N > P.m) {
    const auto pl = choose_powerlog(P, roots);
    cert.subcase = Subcase::TwoLog;
    cert.gamma_lo = cert.gamma_hi = roots.beta_star;
    double s = pl.s0;
    for (int d = 0; d <= kSDoublings; ++d, s *= 2.0) {
      cert.s_history.push_back(s);
      const auto u = RadialProfile::power_log(1.0, roots.beta_star, pl.tau, s);
      if (!powerlog_operator_positive(P, u)) continue;
      const auto ev = evaluate_unit(P, u, settings);
      const auto c = calibrate(P, ev, &cert.kappa_history);
      if (c.ok) {
        cert.profile = u.with_kappa(c.kappa);
        out.report = c.report;
        return out;
      }
    }
    throw BudgetExhausted("no s in the doubling schedule gave a verified power-log profile");
  }

  const GammaChoice g = choose_gamma(P, roots, policy);
  cert.subcase = g.subcase;
  cert.gamma_lo = g.lo;
  cert.gamma_hi = g.hi;
  cert.subcase_tie = g.tie;
  const auto u = RadialProfile::power(1.0, g.gamma);
  const auto ev = evaluate_unit(P, u, settings);
  const auto c = calibrate(P, ev, &cert.kappa_history);
  if (!c.ok) throw BudgetExhausted("kappa calibration failed: " + c.report.failure);
  cert.profile = u.with_kappa(c.kappa);
  out.report = c.report;
  return out;
}

}  // namespace chq
