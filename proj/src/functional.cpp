#include "mfp/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mfp/error.hpp"
#include "mfp/scalar.hpp"

namespace mfp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kProxMaxIter = 100;

// Slope p solving sigma p + m H_p(p) = wbar; then w = m H_p(p) = wbar - sigma p.
double prox_slope(double m, double wbar, double sigma, const HamiltonianSpec& H) {
  if (wbar == 0.0) return 0.0;
  if (H.family() == HamiltonianFamily::Quadratic) return wbar / (sigma + H.scale() * m);
  const double end = wbar / sigma;
  const double lo = std::min(0.0, end);
  const double hi = std::max(0.0, end);
  auto eval = [&](double p) {
    const auto h = H.eval(p);
    return std::pair<double, double>{sigma * p + m * h.Hp - wbar, sigma + m * h.Hpp};
  };
  const auto root = scalar::increasing_root(eval, lo, hi, 0.5 * (lo + hi), 1e-16, 0.0, 300);
  return root.x;
}

}  // namespace

CenteredState interpolate_to_centers(const PrimalState& state) {
  const auto& grid = state.m.grid();
  const int nt = grid.n_t();
  const int nx = grid.n_x();
  CenteredState c;
  c.m.resize(static_cast<std::size_t>(nt) * nx);
  c.w.resize(static_cast<std::size_t>(nt) * nx);
  for (int k = 0; k < nt; ++k) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(k) * nx + i;
      c.m[idx] = 0.5 * (state.m.at(k, i) + state.m.at(k + 1, i));
      c.w[idx] = 0.5 * (state.w.at(k, grid.left_face(i)) + state.w.at(k, grid.right_face(i)));
    }
  }
  return c;
}

double cell_integrand(double m, double w, double V, const HamiltonianSpec& H,
                      const CouplingSpec& C) {
  if (!(m >= 0.0)) return kInf;
  if (m == 0.0) return w == 0.0 ? C.F(0.0) : kInf;
  const double kinetic = m * H.legendre(w / m);
  const double eps = C.epsilon();
  const double entropy = eps > 0.0 ? eps * m * (std::log(m) - 1.0) : 0.0;
  return kinetic + entropy + V * m + C.F(m);
}

double functional_value(const PrimalState& state, const ProblemSpec& spec) {
  const auto& grid = spec.grid();
  if (state.m.grid() != grid || state.w.grid() != grid)
    throw ValidationError("state", "grid mismatch between state and problem");
  const CenteredState c = interpolate_to_centers(state);
  const auto& H = spec.hamiltonian();
  const auto& C = spec.coupling();
  const int nx = grid.n_x();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < c.m.size(); ++idx)
    sum += cell_integrand(c.m[idx], c.w[idx], spec.V()[idx % nx], H, C);
  return sum * grid.dt() * grid.dx();
}

double functional_value_relative_entropy(const PrimalState& state, const ProblemSpec& spec) {
  const double base = functional_value(state, spec);
  const CenteredState c = interpolate_to_centers(state);
  double total = 0.0;
  for (double v : c.m) total += v;
  return base + spec.epsilon() * total * spec.grid().dt() * spec.grid().dx();
}

std::vector<double> continuity_residual(const PrimalState& state) {
  const auto& grid = state.m.grid();
  const int nt = grid.n_t();
  const int nx = grid.n_x();
  const double dt = grid.dt();
  const double dx = grid.dx();
  std::vector<double> r(static_cast<std::size_t>(nt) * nx);
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < nx; ++i)
      r[static_cast<std::size_t>(k) * nx + i] =
          (state.m.at(k + 1, i) - state.m.at(k, i)) / dt -
          (state.w.at(k, grid.right_face(i)) - state.w.at(k, grid.left_face(i))) / dx;
  return r;
}

double feasibility_defect(const PrimalState& state, const ProblemSpec& spec) {
  const auto& grid = spec.grid();
  double defect = 0.0;
  for (double v : continuity_residual(state)) defect = std::max(defect, std::abs(v));
  for (int i = 0; i < grid.n_x(); ++i) {
    defect = std::max(defect, std::abs(state.m.at(0, i) - spec.m0()[i]));
    defect = std::max(defect, std::abs(state.m.at(grid.n_t(), i) - spec.m1()[i]));
  }
  if (!grid.is_torus())
    for (int k = 0; k < grid.n_t(); ++k)
      defect = std::max({defect, std::abs(state.w.at(k, 0)), std::abs(state.w.at(k, grid.n_x()))});
  return defect;
}

ProxResult prox_cell(double mbar, double wbar, double sigma, double V, const HamiltonianSpec& H,
                     const CouplingSpec& C) {
  if (!(sigma > 0.0)) throw ValidationError("sigma", "prox step must be > 0");
  const double eps = C.epsilon();

  // Stationarity in m after eliminating w (envelope theorem):
  //   g(m) = -H(p(m)) + eps log m + V + f(m) + (m - mbar) / sigma
  // g'(m) = H_p^2 / (sigma + m H_pp) + eps / m + f'(m) + 1 / sigma > 0.
  auto stationarity = [&](double m) {
    const double p = prox_slope(m, wbar, sigma, H);
    const auto h = H.eval(p);
    const double g = -h.H + (eps > 0.0 ? eps * std::log(m) : 0.0) + V + C.f(m) + (m - mbar) / sigma;
    const double curvature = std::isfinite(h.Hpp) ? h.Hp * h.Hp / (sigma + m * h.Hpp) : 0.0;
    const double dg = curvature + (eps > 0.0 ? eps / m : 0.0) + C.df(m) + 1.0 / sigma;
    return std::pair<double, double>{g, dg};
  };

  ProxResult out;
  double m_star = 0.0;
  if (eps > 0.0) {
    auto in_log = [&](double y) {
      const double m = std::exp(y);
      auto [g, dg] = stationarity(m);
      return std::pair<double, double>{g, dg * m};
    };
    auto g_only = [&](double y) { return in_log(y).first; };
    const double y0 = std::log(std::max(mbar, 1e-12));
    double lo = y0;
    double hi = y0;
    if (!scalar::bracket_increasing(g_only, lo, hi))
      throw NumericalError("prox_cell: failed to bracket (mbar=" + std::to_string(mbar) +
                           ", wbar=" + std::to_string(wbar) + ")");
    const auto root = scalar::increasing_root(in_log, lo, hi, y0, 1e-15, 0.0, kProxMaxIter);
    if (!root.converged)
      throw NumericalError("prox_cell: Newton did not converge (mbar=" + std::to_string(mbar) +
                           ", wbar=" + std::to_string(wbar) + ")");
    m_star = std::exp(root.x);
    out.iterations = root.iterations;
  } else {
    // eps = 0: vacuum m = 0 is optimal when the stationarity function is
    // already nonnegative at 0+.
    const double p0 = wbar / sigma;
    const double f0 = C.family() == CouplingFamily::Log && C.c() > 0.0 ? -kInf : C.f(0.0);
    const double g0 = -H.eval(p0).H + V + f0 - mbar / sigma;
    if (g0 >= 0.0) {
      out.m = 0.0;
      out.w = 0.0;
      return out;
    }
    auto g_only = [&](double m) { return stationarity(m).first; };
    double hi = std::max(mbar, 1.0);
    for (int n = 0; n < 200 && g_only(hi) < 0.0; ++n) hi *= 2.0;
    const auto root =
        scalar::increasing_root(stationarity, 0.0, hi, std::max(mbar, 0.5 * hi), 1e-16, 0.0, kProxMaxIter);
    if (!root.converged)
      throw NumericalError("prox_cell: Newton did not converge (mbar=" + std::to_string(mbar) +
                           ", wbar=" + std::to_string(wbar) + ")");
    m_star = root.x;
    out.iterations = root.iterations;
  }
  const double p = prox_slope(m_star, wbar, sigma, H);
  out.m = m_star;
  out.w = wbar - sigma * p;
  out.kkt_residual = std::abs(stationarity(m_star).first);
  return out;
}

}  // namespace mfp
