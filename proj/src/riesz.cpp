#include "chq/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chq/beta.hpp"
#include "chq/quadrature.hpp"
#include "chq/special.hpp"

namespace chq {

double riesz_constant(int N, double alpha) {
  if (!(alpha > 0.0 && alpha < N)) throw DomainError("alpha", "0 < alpha < N required");
  return gamma_fn(0.5 * (N - alpha)) /
         (gamma_fn(0.5 * alpha) * std::pow(std::numbers::pi, 0.5 * N) * std::pow(2.0, alpha));
}

// ---------------------------------------------------------------- densities

RadialDensity RadialDensity::from_profile(const RadialProfile& profile) {
  profile.validate();
  RadialDensity d;
  const RadialProfile unit = profile.with_kappa(1.0);
  d.shape_ = [unit](double rho) { return unit.value(rho); };
  d.amplitude_ = profile.kappa;
  TailModel tail;
  tail.start = 1.0;
  tail.exponent = profile.gamma;
  if (profile.kind == ProfileKind::PowerLog) {
    tail.log_power = profile.tau;
    tail.s = profile.s;
  }
  d.tail_ = tail;
  return d;
}

RadialDensity RadialDensity::indicator(double lo, double hi, double height) {
  if (!(hi > lo) || !(height >= 0.0)) throw DomainError("indicator", "lo < hi, height >= 0");
  RadialDensity d;
  d.shape_ = [lo, hi, height](double rho) { return rho > lo && rho < hi ? height : 0.0; };
  d.support_end_ = hi;
  d.breakpoints_ = {lo, hi};
  return d;
}

RadialDensity RadialDensity::tabulated(std::vector<double> radii, std::vector<double> values,
                                       double tail_exponent) {
  std::vector<Violation> v;
  if (radii.size() < 2 || radii.size() != values.size())
    v.push_back({"radii", "at least two radii with matching values required"});
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) v.push_back({"radii", "radii must be strictly increasing"});
  for (double y : values)
    if (!(y > 0.0)) v.push_back({"values", "tabulated values must be positive"});
  if (!radii.empty() && !(radii.front() <= 1.0 + 1e-12))
    v.push_back({"radii", "first radius must be <= 1"});
  if (!v.empty()) throw DomainError(std::move(v));

  std::vector<double> log_r(radii.size()), log_y(values.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    log_r[i] = std::log(radii[i]);
    log_y[i] = std::log(values[i]);
  }
  const double last_r = radii.back(), last_y = values.back();
  RadialDensity d;
  d.shape_ = [log_r, log_y, last_r, last_y, tail_exponent](double rho) {
    if (rho >= last_r) return last_y * std::pow(rho / last_r, tail_exponent);
    const double x = std::log(rho);
    auto it = std::upper_bound(log_r.begin(), log_r.end(), x);
    if (it == log_r.begin()) return std::exp(log_y.front());
    const std::size_t j = static_cast<std::size_t>(it - log_r.begin());
    const double w = (x - log_r[j - 1]) / (log_r[j] - log_r[j - 1]);
    return std::exp(log_y[j - 1] + w * (log_y[j] - log_y[j - 1]));
  };
  TailModel tail;
  tail.start = last_r;
  tail.exponent = tail_exponent;
  tail.c_lo = tail.c_hi = last_y / std::pow(last_r, tail_exponent);
  d.tail_ = tail;
  d.breakpoints_ = std::move(radii);
  return d;
}

RadialDensity RadialDensity::custom(std::function<double(double)> f, double support_end,
                                    std::optional<TailModel> tail,
                                    std::vector<double> breakpoints) {
  if (!std::isfinite(support_end) && !tail)
    throw DomainError("tail", "unbounded support requires a tail model");
  RadialDensity d;
  d.shape_ = std::move(f);
  d.support_end_ = support_end;
  d.tail_ = tail;
  d.breakpoints_ = std::move(breakpoints);
  return d;
}

RadialDensity RadialDensity::scaled(double factor) const {
  RadialDensity d = *this;
  d.amplitude_ *= factor;
  return d;
}

// ------------------------------------------------------------------ kernel

namespace {

constexpr double kInnerTol = 1e-12;

struct KernelSpec {
  int N;
  double alpha;
  double omega_inner;  // |S^{N-2}|
  double omega_full;   // |S^{N-1}|
  double a, b, c;      // hypergeometric parameters of the spherical mean

  KernelSpec(int n, double al)
      : N(n),
        alpha(al),
        omega_inner(n >= 2 ? sphere_area(n - 2) : 0.0),
        omega_full(sphere_area(n - 1)),
        a(0.5 * (n - al)),
        b(1.0 - 0.5 * al),
        c(0.5 * n) {}
};

double closed_form(const KernelSpec& k, double r, double rho, double D) {
  const double sum = r + rho;
  if (k.N == 1) return std::pow(D, k.alpha - 1.0) + std::pow(sum, k.alpha - 1.0);
  // N = 3: 2π [(r+ρ)^ε - D^ε] / (ε r ρ), ε = α - 1.
  const double ratio = D / sum;
  const double ell = ratio < 0.5 ? std::log(ratio) : std::log1p(-2.0 * std::min(r, rho) / sum);
  const double eps = k.alpha - 1.0;
  const double phi = eps == 0.0 ? -ell : -std::expm1(eps * ell) / eps;
  return 2.0 * std::numbers::pi * std::pow(sum, eps) * phi / (r * rho);
}

double series(const KernelSpec& k, double r, double rho) {
  const double big = std::max(r, rho), small = std::min(r, rho);
  const double z = (small / big) * (small / big);
  double F = 1.0, term = 1.0;
  for (int j = 0; j < 2000; ++j) {
    term *= (k.a + j) * (k.b + j) / ((k.c + j) * (j + 1.0)) * z;
    F += term;
    if (std::abs(term) <= 1e-17 * std::abs(F)) break;
  }
  return k.omega_full * std::pow(big, k.alpha - k.N) * F;
}

double near_quadrature(const KernelSpec& k, double r, double rho, double D) {
  if (!(D > 0.0)) D = 1e-300 * std::max(r, rho);
  const double N = k.N, alpha = k.alpha;
  const double log_rr = std::log(r * rho);
  const double log_D = std::log(D);
  const double log_two_sq = std::log(2.0) + 0.5 * log_rr;
  const double v1 = std::asinh(std::sqrt(2.0 * r * rho) / D);
  constexpr double ln2 = std::numbers::ln2;

  // θ ∈ [0, π/2] through 2√(rρ) sin(θ/2) = D sinh v, which turns the
  // distance into D cosh v and flattens the diagonal peak.
  auto near = [&](double v) {
    const double e2 = std::exp(-2.0 * v);
    const double log_sinh = v < 1e-3 ? std::log(std::sinh(v)) : v + std::log1p(-e2) - ln2;
    const double log_cosh = v + std::log1p(e2) - ln2;
    const double sin_half = std::min(std::exp(log_D + log_sinh - log_two_sq), 1.0);
    const double cos_half = std::sqrt(1.0 - sin_half * sin_half);
    double phi = (alpha - 1.0) * log_D - 0.5 * (N - 1.0) * log_rr + (alpha - N + 1.0) * log_cosh;
    if (k.N != 2) phi += (N - 2.0) * log_sinh;
    if (k.N != 3) phi += (N - 3.0) * std::log(cos_half);
    return std::exp(phi);
  };
  auto far = [&](double theta) {
    const double dist2 = r * r + rho * rho - 2.0 * r * rho * std::cos(theta);
    return std::pow(dist2, 0.5 * (alpha - N)) * std::pow(std::sin(theta), N - 2.0);
  };
  const auto inner = quad::gauss_kronrod(near, 0.0, v1, 0.0, kInnerTol);
  const auto outer = quad::gauss_kronrod(far, 0.5 * std::numbers::pi, std::numbers::pi, 0.0,
                                         kInnerTol);
  return k.omega_inner * (inner.value + outer.value);
}

double spherical_impl(const KernelSpec& k, double r, double rho, double D,
                      kernel::Method method) {
  using kernel::Method;
  if (k.N == 1) return closed_form(k, r, rho, D);
  switch (method) {
    case Method::ClosedForm:
      if (k.N != 3) throw DomainError("method", "closed form available for N = 1, 3 only");
      return closed_form(k, r, rho, D);
    case Method::Series:
      return series(k, r, rho);
    case Method::Quadrature:
      return near_quadrature(k, r, rho, D);
    case Method::Auto:
      break;
  }
  if (k.N == 3) return closed_form(k, r, rho, D);
  const double ratio = rho / r;
  if (ratio <= 0.5 || ratio >= 2.0) return series(k, r, rho);
  return near_quadrature(k, r, rho, D);
}

double deviation_bound(const KernelSpec& k, double z_max) {
  double sum = 0.0, term = 1.0;
  for (int j = 0; j < 5000; ++j) {
    term *= std::abs((k.a + j) * (k.b + j) / ((k.c + j) * (j + 1.0))) * z_max;
    sum += term;
    const double next_ratio =
        std::abs((k.a + j + 1) * (k.b + j + 1) / ((k.c + j + 1) * (j + 2.0))) * z_max;
    if (j > 4 && next_ratio < 0.5 && term <= 1e-18 * sum) {
      sum += 2.0 * term * next_ratio;
      break;
    }
  }
  return sum;
}

}  // namespace

namespace kernel {

double spherical(int N, double alpha, double r, double rho, double D, Method method) {
  return spherical_impl(KernelSpec(N, alpha), r, rho, D, method);
}

double spherical_mean_deviation(int N, double alpha, double z_max) {
  return deviation_bound(KernelSpec(N, alpha), z_max);
}

}  // namespace kernel

// -------------------------------------------------------------- convolution

namespace {

struct Accumulator {
  double value = 0.0;
  double error = 0.0;
  int evals = 0;
  bool converged = true;
};

class ConvolutionRun {
 public:
  ConvolutionRun(const RadialDensity& f, int N, double alpha, double p, double r, double tol)
      : f_(f), spec_(N, alpha), p_(p), r_(r), panel_tol_(tol / 20.0) {}

  double integrand(double rho, double D) const {
    const double fv = f_(rho);
    if (fv <= 0.0) return 0.0;
    return std::pow(fv, p_) * std::pow(rho, spec_.N - 1) * spherical_impl(spec_, r_, rho, D,
                                                                          kernel::Method::Auto);
  }

  /// Integrates over [lo, hi] ⊂ [1, ∞) splitting at r/2, r, 2r and the
  /// density's breakpoints.
  void integrate(double lo, double hi, Accumulator& acc) const {
    std::vector<double> cuts = {lo, hi, 0.5 * r_, r_, 2.0 * r_};
    for (double b : f_.breakpoints()) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double x) { return x < lo || x > hi; }),
               cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) panel(cuts[i], cuts[i + 1], acc);
  }

 private:
  void panel(double a, double b, Accumulator& acc) const {
    quad::Result res;
    if (b == r_) {
      res = quad::tanh_sinh([&](double x, double, double dr) { return integrand(x, dr); }, a, b,
                            0.0, panel_tol_);
    } else if (a == r_) {
      res = quad::tanh_sinh([&](double x, double dl, double) { return integrand(x, dl); }, a, b,
                            0.0, panel_tol_);
    } else {
      auto g = [&](double t) {
        const double rho = std::exp(t);
        return integrand(rho, std::abs(r_ - rho)) * rho;
      };
      res = quad::gauss_kronrod(g, std::log(a), std::log(b), 0.0, panel_tol_);
    }
    acc.value += res.value;
    acc.error += res.error;
    acc.evals += res.evals;
    acc.converged = acc.converged && res.converged;
  }

  const RadialDensity& f_;
  KernelSpec spec_;
  double p_, r_, panel_tol_;
};

// ∫_R^∞ ρ^{η-1} log^k(sρ) dρ for η < 0.
double tail_integral(double R, double eta, double k, double s) {
  if (k == 0.0) return std::pow(R, eta) / -eta;
  const double u0 = std::log(s * R);
  auto g = [&](double w) { return std::exp(eta * w) * std::pow(u0 + w, k); };
  const auto res = quad::gauss_kronrod_to_inf(g, 0.0, 0.0, 1e-12);
  if (!res.converged) throw QuadratureFailure("tail integral did not converge");
  return std::pow(R, eta) * res.value;
}

}  // namespace

RieszValue riesz_convolve_radial(const RadialDensity& f, int N, double alpha, double p, double r,
                                 double tol) {
  {
    std::vector<Violation> v;
    if (N < 1) v.push_back({"N", "N >= 1 required"});
    if (!(alpha > 0.0 && alpha < N)) v.push_back({"alpha", "0 < alpha < N required"});
    if (!(p > 0.0)) v.push_back({"p", "p > 0 required"});
    if (!(r > 1.0) || !std::isfinite(r)) v.push_back({"r", "r > 1 required"});
    if (!(tol > 0.0)) v.push_back({"tol", "tol > 0 required"});
    if (!v.empty()) throw DomainError(std::move(v));
  }
  RieszValue out;
  out.r = r;
  const bool bounded = std::isfinite(f.support_end());
  const auto& tail = f.tail();
  if (!bounded && alpha + p * tail->exponent >= 0.0) {
    out.divergent = true;
    out.lower = out.upper = std::numeric_limits<double>::infinity();
    return out;
  }

  const double A = riesz_constant(N, alpha);
  const double scale = A * std::pow(f.amplitude(), p);
  ConvolutionRun run(f, N, alpha, p, r, tol);
  Accumulator bulk;

  double R = bounded ? f.support_end() : std::max({10.0 * r, 100.0, tail->start});
  if (R > 1.0) run.integrate(1.0, R, bulk);

  double tail_lo = 0.0, tail_hi = 0.0;
  if (!bounded) {
    const double omega = sphere_area(N - 1);
    const double eta = alpha + p * tail->exponent;
    const double k = p * tail->log_power;
    while (true) {
      const double z = (r / R) * (r / R);
      const double E = kernel::spherical_mean_deviation(N, alpha, z);
      const double T = tail_integral(R, eta, k, tail->s);
      tail_lo = omega * std::pow(tail->c_lo, p) * std::max(0.0, 1.0 - E) * T;
      tail_hi = omega * std::pow(tail->c_hi, p) * (1.0 + E) * T;
      if (tail_hi - tail_lo <= 0.25 * tol * (bulk.value + tail_lo)) break;
      const double next = R * 8.0;
      if (next > 1e250)
        throw QuadratureFailure("riesz_convolve_radial: tail enclosure too wide at R = 1e250");
      run.integrate(R, next, bulk);
      R = next;
    }
  }
  if (!bulk.converged)
    throw QuadratureFailure("riesz_convolve_radial: quadrature did not converge at r = " +
                            std::to_string(r));

  const double err = 2.0 * bulk.error + 2.0 * kInnerTol * std::abs(bulk.value);
  out.lower = scale * std::max(0.0, bulk.value - err + tail_lo);
  out.upper = scale * (bulk.value + err + tail_hi);
  out.truncation_radius = R;
  out.evals = bulk.evals;
  if (out.upper - out.lower > tol * out.lower && out.upper > 0.0)
    throw QuadratureFailure("riesz_convolve_radial: enclosure wider than tolerance at r = " +
                            std::to_string(r));
  return out;
}

// ------------------------------------------------------------------ bounds

double lower_bound_far(const RadialDensity& f, int N, double alpha, double r) {
  if (!(r >= 2.0)) throw DomainError("r", "r >= 2 required");
  auto g = [&](double rho) { return f(rho) * std::pow(rho, N - 1); };
  std::vector<double> cuts = {1.5, 2.0};
  for (double b : f.breakpoints())
    if (b > 1.5 && b < 2.0) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  quad::Result mass;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    mass += quad::gauss_kronrod(g, cuts[i], cuts[i + 1], 0.0, 1e-12);
  const double M = f.amplitude() * sphere_area(N - 1) * std::max(0.0, mass.value - mass.error);
  return riesz_constant(N, alpha) * std::pow(2.0, alpha - N) * M * std::pow(r, alpha - N);
}

double PowerLowerBound::evaluate(double r) const { return constant * std::pow(r, exponent); }

PowerLowerBound power_lower_bound(double c, double beta, int N, double alpha, double p) {
  const double e = alpha + p * beta;
  if (!(e < 0.0)) throw DomainError("beta", "alpha + p*beta < 0 required");
  if (!(c > 0.0)) throw DomainError("c", "c > 0 required");
  PowerLowerBound out;
  out.exponent = e;
  out.constant = riesz_constant(N, alpha) * std::pow(1.5, alpha - N) * std::pow(c, p) *
                 sphere_area(N - 1) * std::pow(2.0, e) / -e;
  return out;
}

const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::PowerCase: return "power";
    case BoundCase::CriticalLogCase: return "critical_log";
    case BoundCase::FarFieldCase: return "far_field";
  }
  return "unknown";
}

double PowerBound::evaluate(double r) const {
  const double base = constant * std::pow(r, exponent);
  return log_power == 0.0 ? base : base * std::pow(std::log(s * r), log_power);
}

PowerBound power_upper_bounds(double c, double gamma, double tau, double s, int N, double alpha,
                              double p) {
  {
    std::vector<Violation> v;
    if (!(c > 0.0)) v.push_back({"c", "c > 0 required"});
    if (!(gamma < 0.0)) v.push_back({"gamma", "gamma < 0 required"});
    if (!(tau >= 0.0)) v.push_back({"tau", "tau >= 0 required"});
    if (!(s > 1.0)) v.push_back({"s", "s > 1 required"});
    if (!(alpha > 0.0 && alpha < N)) v.push_back({"alpha", "0 < alpha < N required"});
    if (!(p > 0.0)) v.push_back({"p", "p > 0 required"});
    if (!(alpha + p * gamma < 0.0)) v.push_back({"gamma", "alpha + p*gamma < 0 required"});
    if (!v.empty()) throw DomainError(std::move(v));
  }
  const double A = riesz_constant(N, alpha);
  const double omega = sphere_area(N - 1);
  const double cp = std::pow(c, p);
  const double e = alpha + p * gamma;
  const double k = p * tau;
  const double ls = std::log(s);

  // |y| >= 2|x|: |x-y| >= |y|/2, and log(sρ) <= log(sr)(1 + log(ρ/r)/log s).
  double J1;
  if (k == 0.0) {
    J1 = std::pow(2.0, e) / -e;
  } else {
    auto g = [&](double t) { return std::pow(t, e - 1.0) * std::pow(1.0 + std::log(t) / ls, k); };
    const auto res = quad::gauss_kronrod_to_inf(g, 2.0, 0.0, 1e-12);
    J1 = res.value + res.error;
  }
  const double K1 = A * cp * std::pow(2.0, N - alpha) * omega * J1;
  // |x|/2 <= |y| <= 2|x|: f^p at most c^p (r/2)^{pγ} log^{pτ}(2sr), kernel mass in B_{3r}.
  const double K2 = A * cp * std::pow(2.0, -p * gamma) * std::pow(1.0 + std::numbers::ln2 / ls, k) *
                    omega * std::pow(3.0, alpha) / alpha;
  // |y| <= |x|/2: |x-y| >= |x|/2.
  const double pg = p * gamma;
  PowerBound out;
  out.s = s;
  if (-pg < N) {
    const double K3 = A * cp * omega * std::pow(2.0, -alpha - pg) / (N + pg);
    out.case_tag = BoundCase::PowerCase;
    out.exponent = e;
    out.log_power = k;
    out.constant = K1 + K2 + K3;
  } else if (-pg == N) {
    const double K3 = A * cp * std::pow(2.0, N - alpha) * omega;
    out.case_tag = BoundCase::CriticalLogCase;
    out.exponent = alpha - N;
    out.log_power = 1.0 + k;
    out.constant = (K1 + K2) / ls + K3;
  } else {
    const double K3 = A * cp * std::pow(2.0, N - alpha) * omega / (-pg - N);
    out.case_tag = BoundCase::FarFieldCase;
    out.exponent = alpha - N;
    out.log_power = k;
    out.constant = K1 + K2 + K3;
  }
  return out;
}

}  // namespace chq
