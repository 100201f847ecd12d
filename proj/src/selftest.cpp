#include "chq/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "chq/beta.hpp"
#include "chq/certify.hpp"
#include "chq/classifier.hpp"
#include "chq/radial.hpp"
#include "chq/region.hpp"
#include "chq/riesz.hpp"
#include "chq/special.hpp"

namespace chq {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (ok) detail << "first failure: " << what << "; ";
    ok = false;
  }
};

// ------------------------------------------------------------------- Γ

SuiteResult suite_gamma(const SelftestOptions& opt, Rng& rng) {
  auto table = kLanczosCoefficients;
  if (opt.perturb_gamma) table[3] *= 1.0 + 1e-6;
  Check c;
  double worst = 0.0;
  auto probe = [&](double x) {
    const double got = lanczos_gamma(x, table);
    const double want = std::tgamma(x);
    const double rel = std::abs(got - want) / std::abs(want);
    worst = std::max(worst, rel);
    if (!(rel <= 1e-12)) c.fail("x=" + std::to_string(x));
  };
  for (double x : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0, 0.1, 0.01}) probe(x);
  for (int i = 0; i < 2000; ++i) probe(uniform(rng, 0.01, 40.0));
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  if (std::abs(lanczos_gamma(0.5, table) - sqrt_pi) > 1e-13 * sqrt_pi) c.fail("gamma(1/2)");
  c.detail << "max rel err " << worst;
  return {"gamma_fn", 0, c.ok, 0, 1.0, c.detail.str()};
}

// -------------------------------------------------------------- roots (1)

SuiteResult suite_roots(const SelftestOptions&, Rng& rng) {
  Check c;
  double worst_res = 0.0, worst_quad = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int N = uniform_int(rng, 1, 6);
    const double m = (i % 5 == 0) ? 2.0 : uniform(rng, 1.1, 4.0);
    const double CH = hardy_constant(N, m);
    double mu;
    if (i % 50 == 1)
      mu = CH;
    else
      mu = CH - std::pow(10.0, uniform(rng, -6.0, 2.0));
    const BetaRoots r = solve_beta_roots(N, m, mu);
    const double tol = 1e-9 * (1.0 + std::abs(mu));
    const double res = std::max(std::abs(g_eval(r.beta_minus, N, m) - mu),
                                std::abs(g_eval(r.beta_plus, N, m) - mu));
    worst_res = std::max(worst_res, res / (1.0 + std::abs(mu)));
    if (!(res <= tol)) c.fail("residual N=" + std::to_string(N) + " m=" + std::to_string(m));
    if (!(r.beta_minus <= r.beta_star && r.beta_star <= r.beta_plus)) c.fail("ordering");
    if (m == 2.0) {
      const double b = N - 2.0;
      const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * mu));
      // Cancellation-free quadratic roots.
      const double big = -0.5 * (b + std::copysign(disc, b == 0.0 ? 1.0 : b));
      double r1 = big, r2 = big != 0.0 ? mu / big : 0.0;
      if (r1 > r2) std::swap(r1, r2);
      const double err = std::max(std::abs(r1 - r.beta_minus), std::abs(r2 - r.beta_plus));
      worst_quad = std::max(worst_quad, err);
      if (!(err <= 1e-10)) c.fail("quadratic mismatch mu=" + std::to_string(mu));
    }
  }
  c.detail << "max scaled residual " << worst_res << ", max m=2 deviation " << worst_quad;
  return {"roots", 1, c.ok, 0, 1.0, c.detail.str()};
}

// ------------------------------------------------------------ G bound (2)

SuiteResult suite_g_bound(const SelftestOptions&, Rng& rng) {
  Check c;
  int equal_hits = 0;
  double worst_excess = -1e300;
  for (int i = 0; i < 10000; ++i) {
    const int N = uniform_int(rng, 1, 6);
    const double m = uniform(rng, 1.1, 4.0);
    const double CH = hardy_constant(N, m);
    const double bs = beta_star(N, m);
    double beta;
    if (i % 10 == 0)
      beta = bs + uniform(rng, -1e-7, 1e-7);
    else
      beta = uniform(rng, -10.0, 10.0);
    const double g = g_eval(beta, N, m);
    worst_excess = std::max(worst_excess, g - CH);
    if (!(g <= CH + 1e-12)) c.fail("G above C_H at beta=" + std::to_string(beta));
    if (CH - g <= 1e-12 * std::max(1.0, CH)) {
      ++equal_hits;
      if (!(std::abs(beta - bs) <= 1e-6)) c.fail("equality away from beta*");
    }
  }
  c.detail << "max G - C_H " << worst_excess << ", equality hits " << equal_hits;
  return {"g_bound", 2, c.ok, 0, 1.0, c.detail.str()};
}

// ------------------------------------------------------- radial oracle (3)

SuiteResult suite_radial_oracle(const SelftestOptions&, Rng& rng) {
  Check c;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int N = uniform_int(rng, 1, 6);
    const double m = uniform(rng, 1.2, 4.0);
    const double CH = hardy_constant(N, m);
    const double mu = uniform(rng, -1.0, CH);
    const double r = std::exp(uniform(rng, std::log(1.05), std::log(50.0)));
    RadialProfile u;
    if (i % 2 == 0) {
      u = RadialProfile::power(uniform(rng, 0.2, 3.0), uniform(rng, -3.0, -0.1));
    } else {
      const double gamma = uniform(rng, -3.0, -0.1);
      const double tau = uniform(rng, 0.05, 1.5);
      const double s = std::exp(1.5 * tau / std::abs(gamma)) * uniform(rng, 1.0, 4.0);
      u = RadialProfile::power_log(uniform(rng, 0.2, 3.0), gamma, tau, s);
    }
    const double exact = operator_exact(u, N, m, mu, r);
    const double h = 1e-4 * r;
    double fd;
    try {
      fd = fd_radial_operator([&](double x) { return u.value(x); }, N, m, mu, r, h);
    } catch (const OracleSingularity& e) {
      c.fail(e.what());
      continue;
    }
    const double hardy = std::abs(mu) * std::pow(r, -m) * std::pow(u.value(r), m - 1.0);
    const double flux = std::pow(std::abs(u.derivative(r)), m - 1.0) / r;
    const double scale = std::abs(exact) + 1e-3 * (hardy + flux);
    const double rel = std::abs(fd - exact) / scale;
    worst = std::max(worst, rel);
    if (!(rel <= 1e-4)) c.fail("profile " + std::to_string(i) + " rel " + std::to_string(rel));
  }
  c.detail << "max rel deviation " << worst;
  return {"radial_oracle", 3, c.ok, 0, 5.0, c.detail.str()};
}

// --------------------------------------------------------- riesz shell (4)

SuiteResult suite_riesz_shell(const SelftestOptions&, Rng&) {
  Check c;
  double worst = 0.0;
  const auto shell = RadialDensity::indicator(1.0, 2.0);
  for (double r : {3.0, 4.0, 10.0}) {
    const auto v = riesz_convolve_radial(shell, 3, 2.0, 1.0, r, 1e-8);
    const double want = 7.0 / (3.0 * r);
    const double mid = 0.5 * (v.lower + v.upper);
    const double rel = std::abs(mid - want) / want;
    worst = std::max(worst, rel);
    if (!(rel <= 1e-6)) c.fail("N=3 r=" + std::to_string(r));
    if (!(v.lower <= want * (1 + 1e-12) && want <= v.upper * (1 + 1e-12)))
      c.fail("enclosure misses 7/(3r) at r=" + std::to_string(r));
  }
  // Same shell in N = 5 with α = 2: outside the support the potential is
  // A_2 r^{-3} times the mass.
  for (double r : {3.0, 4.0, 10.0}) {
    const auto v = riesz_convolve_radial(shell, 5, 2.0, 1.0, r, 1e-8);
    const double mass = sphere_area(4) * (std::pow(2.0, 5) - 1.0) / 5.0;
    const double want = riesz_constant(5, 2.0) * mass * std::pow(r, -3.0);
    const double rel = std::abs(0.5 * (v.lower + v.upper) - want) / want;
    worst = std::max(worst, rel);
    if (!(rel <= 1e-6)) c.fail("N=5 r=" + std::to_string(r));
  }
  c.detail << "max rel err " << worst << " (value at r=4: "
           << 0.5 * (riesz_convolve_radial(shell, 3, 2.0, 1.0, 4.0, 1e-8).lower +
                     riesz_convolve_radial(shell, 3, 2.0, 1.0, 4.0, 1e-8).upper)
           << ")";
  return {"riesz_shell", 4, c.ok, 0, 10.0, c.detail.str()};
}

// ----------------------------------------------------- riesz exponents (5)

double fitted_slope(const RadialDensity& f, int N, double alpha, double p) {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 8; ++i) {
    const double r = std::pow(10.0, 1.0 + 2.0 * i / 8.0);
    const auto v = riesz_convolve_radial(f, N, alpha, p, r, 1e-6);
    xs.push_back(std::log(r));
    ys.push_back(std::log(0.5 * (v.lower + v.upper)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

SuiteResult suite_riesz_exponents(const SelftestOptions&, Rng&) {
  Check c;
  struct Case {
    int N;
    double alpha, p, gamma;
  };
  // The last case is the reference example; with p|γ| = 2.7 close to N its
  // r^{α-N} correction still bends the slope on [10, 1e3] (see README).
  const Case cases[] = {{3, 0.5, 1.0, -1.0}, {5, 1.0, 2.0, -1.0}, {4, 1.0, 1.0, -2.0},
                        {3, 2.0, 3.0, -2.0}, {5, 1.0, 1.0, -6.0}, {2, 1.0, 3.0, -1.0},
                        {3, 2.0, 3.0, -0.9}};
  for (const auto& k : cases) {
    const auto f = RadialDensity::from_profile(RadialProfile::power(1.0, k.gamma));
    const double slope = fitted_slope(f, k.N, k.alpha, k.p);
    const bool far = k.p * std::abs(k.gamma) > k.N;
    const double want = far ? k.alpha - k.N : k.alpha + k.p * k.gamma;
    c.detail << "N=" << k.N << " a=" << k.alpha << " p=" << k.p << " g=" << k.gamma
             << ": slope " << slope << " vs " << want << "; ";
    if (!(std::abs(slope - want) <= 0.05)) c.fail("slope N=" + std::to_string(k.N));
  }
  struct Div {
    int N;
    double alpha, p, gamma;
    bool divergent;
  };
  const Div divs[] = {{3, 2.0, 1.0, -1.0, true},  {3, 1.5, 3.0, -0.5, true},
                      {3, 1.0, 2.0, -0.25, true}, {3, 1.0, 2.0, -0.51, false},
                      {2, 1.0, 1.0, -1.0, true},  {4, 2.0, 4.0, -0.55, false}};
  for (const auto& d : divs) {
    const auto f = RadialDensity::from_profile(RadialProfile::power(1.0, d.gamma));
    const auto v = riesz_convolve_radial(f, d.N, d.alpha, d.p, 5.0, 1e-6);
    if (v.divergent != d.divergent) c.fail("divergence flag N=" + std::to_string(d.N));
  }
  return {"riesz_exponents", 5, c.ok, 0, 30.0, c.detail.str()};
}

// ------------------------------------------------------ bound sandwich (6)

SuiteResult suite_bound_sandwich(const SelftestOptions&, Rng& rng) {
  Check c;
  double tightest_lo = 1e300, tightest_hi = 1e300;
  for (int i = 0; i < 50; ++i) {
    const int N = uniform_int(rng, 1, 5);
    const double alpha = uniform(rng, 0.1, N - 0.1);
    const double p = uniform(rng, 0.5, 4.0);
    const double gamma = -alpha / p * uniform(rng, 1.1, 4.0);
    const double tau = i % 2 == 0 ? 0.0 : uniform(rng, 0.1, 1.0);
    double s = std::exp(1.0);
    if (tau > 0.0) s = std::max(1.5, std::exp(1.2 * tau / std::abs(gamma))) * uniform(rng, 1.0, 3.0);
    const double kappa = uniform(rng, 0.5, 2.0);
    const RadialProfile u = tau == 0.0 ? RadialProfile::power(kappa, gamma)
                                       : RadialProfile::power_log(kappa, gamma, tau, s);
    const auto f = RadialDensity::from_profile(u);
    const PowerBound upper = power_upper_bounds(kappa, gamma, tau, s, N, alpha, p);
    const double c_low = kappa * std::pow(std::log(s), tau);
    const PowerLowerBound lower = power_lower_bound(c_low, gamma, N, alpha, p);
    // f^p as a density of its own, for the mass bound on 3/2 < |y| < 2.
    const auto fp = RadialDensity::custom([u, p](double rho) { return std::pow(u.value(rho), p); },
                                          std::numeric_limits<double>::infinity(),
                                          TailModel{1.0, p * gamma, p * tau, s, 1.0, 1.0});
    for (double r : {5.0, 20.0, 100.0}) {
      const auto v = riesz_convolve_radial(f, N, alpha, p, r, 1e-6);
      const double lo = std::max(lower.evaluate(r), lower_bound_far(fp, N, alpha, r));
      const double hi = upper.evaluate(r);
      tightest_lo = std::min(tightest_lo, v.lower / lo);
      tightest_hi = std::min(tightest_hi, hi / v.upper);
      if (!(lo <= v.lower)) c.fail("lower bound above enclosure, profile " + std::to_string(i));
      if (!(v.upper <= hi)) c.fail("upper bound below enclosure, profile " + std::to_string(i));
    }
  }
  c.detail << "min enclosure/lower " << tightest_lo << ", min upper/enclosure " << tightest_hi;
  return {"bound_sandwich", 6, c.ok, 0, 60.0, c.detail.str()};
}

// ----------------------------------------------------- iff consistency (7)

struct Background {
  const char* label;
  int N;
  double m, alpha, mu;
  double p_min, p_max, q_min, q_max;
};

const std::vector<Background>& backgrounds() {
  static const std::vector<Background> b = {
      {"N>m, a>N-m, mu=C_H", 3, 2.0, 2.0, 0.25, 2.0, 10.0, 1.0, 9.0},
      {"N>m, a=N-m, 0<mu<C_H", 3, 1.5, 1.5, 0.3, 0.5, 6.0, -0.5, 5.0},
      {"N>m, a<N-m, mu<0", 3, 1.5, 1.0, -0.5, 0.2, 5.0, -1.0, 4.0},
      {"N>m, a<N-m, 0<mu<C_H", 5, 2.0, 1.0, 2.0, 0.2, 6.0, -2.0, 4.0},
      {"N<=m, mu<0", 2, 2.0, 1.0, -1.0, 0.5, 6.0, 0.0, 6.0},
      {"N<m, mu<0", 2, 3.0, 1.5, -0.5, 0.5, 12.0, 1.0, 14.0},
  };
  return b;
}

SuiteResult suite_iff_consistency(const SelftestOptions& opt, Rng&) {
  Check c;
  VerifySettings vs;
  vs.tol = 1e-5;
  vs.threads = opt.threads;
  int exists = 0, not_exists = 0, boundary = 0;
  double min_margin = 1e300;
  for (const auto& bg : backgrounds()) {
    int bx = 0, bn = 0, bb = 0;
    for (int j = 0; j < 15; ++j) {
      for (int i = 0; i < 15; ++i) {
        ProblemParams P;
        P.N = bg.N;
        P.m = bg.m;
        P.theta = bg.m;
        P.alpha = bg.alpha;
        P.mu = bg.mu;
        P.p = bg.p_min + (bg.p_max - bg.p_min) * i / 14.0;
        P.q = bg.q_min + (bg.q_max - bg.q_min) * j / 14.0;
        const Verdict v = classify(P);
        std::ostringstream where;
        where << bg.label << " p=" << P.p << " q=" << P.q;
        if (v.outcome == Outcome::Exists) {
          ++bx;
          try {
            const auto sol = existence_certificate(P, vs);
            const auto& rep = sol.report;
            min_margin = std::min(min_margin, rep.min_margin);
            if (!(rep.passed && rep.min_margin >= 0.0 && rep.c1_ok))
              c.fail("certificate fails at " + where.str());
            if (sol.certificate.subcase != Subcase::TwoLog &&
                !(sol.certificate.profile.gamma > sol.certificate.gamma_lo))
              c.fail("gamma below beta- at " + where.str());
          } catch (const std::exception& e) {
            c.fail(where.str() + ": " + e.what());
          }
        } else if (v.outcome == Outcome::NotExists) {
          ++bn;
          bool sound = !v.witnesses.empty();
          for (const auto& w : v.witnesses)
            sound = sound && witness_hypothesis_holds(w.cited_result, P);
          if (!sound) c.fail("unsound witness at " + where.str());
        } else {
          ++bb;
        }
      }
    }
    c.detail << "[" << bg.label << ": " << bx << " exists, " << bn << " not, " << bb
             << " boundary] ";
    if (bx == 0 || bn == 0) c.fail(std::string("grid does not straddle the region: ") + bg.label);
    exists += bx;
    not_exists += bn;
    boundary += bb;
  }
  c.detail << "total " << exists << "/" << not_exists << "/" << boundary
           << ", min certified margin " << min_margin;
  return {"iff_consistency", 7, c.ok, 0, 600.0, c.detail.str()};
}

// ------------------------------------------------- hand classification (8)

SuiteResult suite_hand_classification(const SelftestOptions&, Rng&) {
  Check c;
  struct Hand {
    int N;
    double m, alpha, mu;
    std::function<std::vector<double>(double, double)> margins;
  };
  const Hand hands[] = {
      {3, 2.0, 2.0, 0.0, [](double p, double q) { return std::vector{p - 2, p + q - 5, q - 2}; }},
      {2, 2.0, 1.0, -1.0, [](double p, double q) { return std::vector{p - 1, p + q - 4, q - 2}; }},
  };
  int checked = 0, skipped = 0;
  for (const auto& h : hands) {
    for (int j = 0; j < 50; ++j) {
      for (int i = 0; i < 50; ++i) {
        const double p = 0.12 * (i + 1);
        const double q = -1.0 + 0.14 * (j + 1);
        const auto ms = h.margins(p, q);
        const bool near = std::any_of(ms.begin(), ms.end(),
                                      [](double x) { return std::abs(x) <= 1e-8; });
        ProblemParams P{h.N, h.m, p, q, h.alpha, h.mu, h.m};
        const Verdict v = classify(P);
        if (near) {
          ++skipped;
          continue;
        }
        ++checked;
        const bool want = std::all_of(ms.begin(), ms.end(), [](double x) { return x > 0; });
        if (want != (v.outcome == Outcome::Exists))
          c.fail("N=" + std::to_string(h.N) + " p=" + std::to_string(p) + " q=" +
                 std::to_string(q));
      }
    }
  }
  c.detail << checked << " points agree, " << skipped << " within the band skipped";
  return {"hand_classification", 8, c.ok, 0, 5.0, c.detail.str()};
}

// -------------------------------------------------------------- Hardy (9)

SuiteResult suite_hardy(const SelftestOptions&, Rng& rng) {
  Check c;
  double worst = 1e300;
  for (int i = 0; i < 100; ++i) {
    const int N = uniform_int(rng, 1, 6);
    const double m = uniform(rng, 1.1, 4.0);
    RadialBump phi;
    phi.center = uniform(rng, 1.5, 20.0);
    phi.half_width = uniform(rng, 0.05, 0.95) * (phi.center - 1.0);
    phi.amplitude = uniform(rng, 0.1, 10.0);
    const HardySides s = hardy_check(phi, N, m);
    worst = std::min(worst, (s.lhs - s.rhs) / (1.0 + s.lhs));
    if (!(s.lhs >= s.rhs - 1e-8 * (1.0 + s.lhs))) c.fail("bump " + std::to_string(i));
  }
  c.detail << "min (lhs - rhs)/(1 + lhs) " << worst;
  return {"hardy", 9, c.ok, 0, 10.0, c.detail.str()};
}

// ------------------------------------------------------------- region (10)

SuiteResult suite_region(const SelftestOptions& opt, Rng&) {
  Check c;
  struct Regime {
    const char* label;
    ProblemParams base;
    double p_min, p_max, q_min, q_max;
  };
  const Regime regimes[] = {
      {"a>=N-m, mu<=C_H", {3, 2.0, 1.0, 0.0, 2.0, 0.0, 2.0}, 0.03, 6.0, -1.0, 6.0},
      {"a<N-m, mu<=0", {5, 2.0, 1.0, 0.0, 1.0, 0.0, 2.0}, 0.03, 4.0, -2.0, 3.0},
      {"a<N-m, 0<mu<=C_H", {5, 2.0, 1.0, 0.0, 1.0, 2.0, 2.0}, 0.03, 4.0, -2.0, 3.0},
  };
  const int n = 200;
  double worst_time = 0.0;
  for (const auto& g : regimes) {
    RegionScanSpec spec;
    spec.base = g.base;
    spec.p_min = g.p_min;
    spec.p_max = g.p_max;
    spec.q_min = g.q_min;
    spec.q_max = g.q_max;
    spec.steps = n;
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = scan_region(spec, {}, opt.threads);
    worst_time = std::max(
        worst_time, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    auto exists = [&](int i, int j) { return recs[j * n + i].outcome == Outcome::Exists; };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (exists(i, j) && ((i + 1 < n && !exists(i + 1, j)) || (j + 1 < n && !exists(i, j + 1))))
          c.fail(std::string("not upward closed: ") + g.label);

    // Derived threshold: the lowest admissible q for a given p, or none.
    const auto& b = g.base;
    const BetaRoots roots = solve_beta_roots(b.N, b.m, b.mu);
    const double bm = std::abs(roots.beta_minus), bp = std::abs(roots.beta_plus);
    const double gap = b.N - b.m - b.alpha;
    const double p_line = b.alpha / bm;
    auto q_line = [&](double p) {
      double q = b.m - 1.0 + (b.m + b.alpha) / bm - p;
      if (gap < 0) q = std::max(q, b.m - 1.0 - gap / bm);
      if (gap == 0) q = std::max(q, b.m - 1.0);
      if (gap > 0) q = std::max(q, b.m - 1.0 - gap * p / b.N);
      if (gap > 0 && b.mu > 0) q = std::max(q, b.m - 1.0 - gap / bp);
      return q;
    };
    const double dp = (g.p_max - g.p_min) / (n - 1), dq = (g.q_max - g.q_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double p = g.p_min + dp * i;
      int lowest = -1;
      for (int j = 0; j < n && lowest < 0; ++j)
        if (exists(i, j)) lowest = j;
      if (p <= p_line - dp) {
        if (lowest >= 0) c.fail(std::string("exists left of p threshold: ") + g.label);
        continue;
      }
      if (p < p_line + dp) continue;  // the column straddling the vertical line
      const double qs = q_line(p);
      if (qs >= g.q_max) continue;
      if (lowest < 0) {
        c.fail(std::string("column without exists: ") + g.label);
        continue;
      }
      const double q_low = g.q_min + dq * lowest;
      if (!(std::abs(q_low - std::max(qs, g.q_min)) <= dq + 1e-12))
        c.fail(std::string("boundary off the threshold lines: ") + g.label + " p=" +
               std::to_string(p));
    }
  }
  c.detail << "three 200x200 scans, slowest " << worst_time << " s";
  if (worst_time > 10.0) c.fail("scan slower than 10 s");
  return {"region", 10, c.ok, 0, 30.0, c.detail.str()};
}

using SuiteFn = SuiteResult (*)(const SelftestOptions&, Rng&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  // Order matters: the position seeds each suite's generator.
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"gamma_fn", suite_gamma},
      {"roots", suite_roots},
      {"g_bound", suite_g_bound},
      {"radial_oracle", suite_radial_oracle},
      {"riesz_shell", suite_riesz_shell},
      {"riesz_exponents", suite_riesz_exponents},
      {"bound_sandwich", suite_bound_sandwich},
      {"iff_consistency", suite_iff_consistency},
      {"hand_classification", suite_hand_classification},
      {"hardy", suite_hardy},
      {"region", suite_region},
  };
  return r;
}

std::vector<std::string> expand(const std::vector<std::string>& requested) {
  static const std::map<std::string, std::vector<std::string>> groups = {
      {"riesz", {"riesz_shell", "riesz_exponents", "bound_sandwich"}},
      {"acceptance",
       {"roots", "g_bound", "radial_oracle", "riesz_shell", "riesz_exponents", "bound_sandwich",
        "iff_consistency", "hand_classification", "hardy", "region"}},
  };
  std::vector<std::string> names;
  if (requested.empty() || std::find(requested.begin(), requested.end(), "all") != requested.end())
    return suite_names();
  for (const auto& r : requested) {
    if (auto it = groups.find(r); it != groups.end()) {
      names.insert(names.end(), it->second.begin(), it->second.end());
      continue;
    }
    const auto& reg = registry();
    if (std::none_of(reg.begin(), reg.end(), [&](const auto& e) { return e.first == r; }))
      throw Error("unknown suite: " + r);
    names.push_back(r);
  }
  // Run in registry order without duplicates.
  std::vector<std::string> ordered;
  for (const auto& [name, fn] : registry())
    if (std::find(names.begin(), names.end(), name) != names.end()) ordered.push_back(name);
  return ordered;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::string format_result(const SuiteResult& r) {
  std::ostringstream os;
  if (r.criterion > 0)
    os << "criterion " << r.criterion << " ";
  os << "[" << r.name << "] " << (r.passed ? "PASS" : "FAIL") << " (" << r.seconds << " s, budget "
     << r.budget_seconds << " s) " << r.detail;
  return os.str();
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  std::vector<SuiteResult> results;
  const auto& reg = registry();
  for (const auto& name : expand(options.suites)) {
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; });
    Rng rng(options.seed + static_cast<std::uint64_t>(it - reg.begin()));
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = it->second(options, rng);
    } catch (const std::exception& e) {
      r.name = name;
      r.criterion = static_cast<int>(it - reg.begin());
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds && r.budget_seconds > 0) {
      r.passed = false;
      r.detail += " (over time budget)";
    }
    if (options.log) *options.log << format_result(r) << std::endl;
    results.push_back(r);
  }
  return results;
}

}  // namespace chq
