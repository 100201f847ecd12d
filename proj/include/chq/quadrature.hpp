#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace chq::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evals = 0;
  bool converged = true;

  Result& operator+=(const Result& o) {
    value += o.value;
    error += o.error;
    evals += o.evals;
    converged = converged && o.converged;
    return *this;
  }
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);
  // Roundoff floor: 15 evaluations, each with relative error ~ eps.
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron));
  return {a, b, kron, err};
}

/// Tanh-sinh node table: complement distance δ = 1 - |x| on [-1,1] and weight.
struct DeNode {
  double delta;
  double weight;
};

struct DeLevel {
  std::vector<DeNode> nodes;  // nodes new at this level, t > 0 only
};

const std::vector<DeLevel>& de_levels();
double de_center_weight();
inline constexpr double kDeH0 = 1.0;

}  // namespace detail

/// Global adaptive 15-point Gauss-Kronrod. Stops when the summed error
/// estimate falls below max(abs_tol, rel_tol*|I|).
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double abs_tol, double rel_tol,
                     int max_panels = 4000) {
  Result out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::priority_queue<detail::Panel> heap;
  auto first = detail::gk15(f, a, b);
  out.evals = 15;
  double total = first.value, total_err = first.error;
  heap.push(first);
  int panels = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (panels >= max_panels) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      break;
    }
    heap.pop();
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    out.evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = sign * total;
  out.error = total_err;
  return out;
}

/// Tanh-sinh quadrature on [a,b] for integrands with endpoint singularities.
/// The integrand is called as f(x, x - a, b - x) with both distances computed
/// without cancellation, so singular factors like (x-a)^{s} stay accurate
/// arbitrarily close to the endpoints.
template <class F>
Result tanh_sinh(F&& f, double a, double b, double abs_tol, double rel_tol) {
  Result out;
  if (a == b) return out;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const auto& levels = detail::de_levels();

  double sum = f(mid, half, half) * detail::de_center_weight();
  out.evals = 1;
  double h = detail::kDeH0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t level = 0; level < levels.size(); ++level) {
    for (const auto& node : levels[level].nodes) {
      const double d = half * node.delta;
      if (!(d > 0.0)) continue;
      const double far = 2.0 * half - d;
      const double left = f(a + d, d, far);
      const double right = f(b - d, far, d);
      sum += node.weight * (left + right);
      out.evals += 2;
    }
    if (level > 0) h *= 0.5;
    const double estimate = sum * h * half;
    if (level >= 2) {
      const double diff = std::abs(estimate - previous);
      if (diff <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
        out.value = estimate;
        out.error = std::max(diff, 4.0 * std::numeric_limits<double>::epsilon() *
                                       std::abs(estimate));
        return out;
      }
    }
    previous = estimate;
    out.value = estimate;
  }
  out.converged = false;
  out.error = std::abs(out.value) * 1e-3;
  return out;
}

/// ∫_a^∞ f via x = a + t/(1-t) on [0,1).
template <class F>
Result gauss_kronrod_to_inf(F&& f, double a, double abs_tol, double rel_tol) {
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    return f(x) / (one_minus * one_minus);
  };
  return gauss_kronrod(g, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace chq::quad
