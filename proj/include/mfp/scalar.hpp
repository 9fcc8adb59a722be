#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

namespace mfp::scalar {

struct RootResult {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Safeguarded Newton for an increasing function g on the bracket [lo, hi]
/// with g(lo) <= 0 <= g(hi). `eval` returns (g, g'). Newton steps leaving the
/// current bracket are replaced by bisection.
template <class Eval>
RootResult increasing_root(Eval&& eval, double lo, double hi, double x0, double x_tol,
                           double f_tol, int max_iter = 200) {
  RootResult r;
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    auto [g, dg] = eval(x);
    if (std::abs(g) <= f_tol) {
      r.x = x;
      r.converged = true;
      return r;
    }
    if (g < 0.0) lo = x;
    else hi = x;
    double next = (dg > 0.0 && std::isfinite(dg)) ? x - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= x_tol * (1.0 + std::abs(x)) || hi - lo <= x_tol * (1.0 + std::abs(x))) {
      r.x = next;
      r.converged = true;
      return r;
    }
    x = next;
  }
  r.x = x;
  return r;
}

/// Expand [lo, hi] geometrically about `center` until g(lo) <= 0 <= g(hi).
/// Returns false when no sign change is found within `max_expand` doublings.
template <class G>
bool bracket_increasing(G&& g, double& lo, double& hi, int max_expand = 200) {
  double step = std::max(1.0, hi - lo);
  for (int n = 0; n < max_expand && g(lo) > 0.0; ++n) {
    lo -= step;
    step *= 2.0;
  }
  step = std::max(1.0, hi - lo);
  for (int n = 0; n < max_expand && g(hi) < 0.0; ++n) {
    hi += step;
    step *= 2.0;
  }
  return g(lo) <= 0.0 && g(hi) >= 0.0;
}

/// Golden-section maximization of a unimodal function on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol = 1e-13,
                                     int max_iter = 400) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int n = 0; n < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++n) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = fc >= fd ? c : d;
  return {x, std::max(fc, fd)};
}

}  // namespace mfp::scalar
