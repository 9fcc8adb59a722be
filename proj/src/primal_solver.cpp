#include "mfp/primal_solver.hpp"

#include <cmath>
#include <limits>

#include "mfp/error.hpp"
#include "mfp/projection.hpp"

namespace mfp {

void PrimalConfig::validate() const {
  if (!(sigma > 0.0)) throw ValidationError("primal.sigma", "must be > 0");
  if (!(theta >= 1.0 && theta < 2.0)) throw ValidationError("primal.theta", "must lie in [1, 2)");
  if (!(tol_kkt > 0.0)) throw ValidationError("primal.tol_kkt", "must be > 0");
  if (!(tol_mass > 0.0)) throw ValidationError("primal.tol_mass", "must be > 0");
  if (max_iters < 1) throw ValidationError("primal.max_iters", "must be >= 1");
}

namespace {

PrimalState straight_line(const ProblemSpec& spec) {
  const auto& g = spec.grid();
  std::vector<double> m(static_cast<std::size_t>(g.num_time_nodes()) * g.n_x());
  for (int k = 0; k <= g.n_t(); ++k) {
    const double s = static_cast<double>(k) / g.n_t();
    for (int i = 0; i < g.n_x(); ++i)
      m[g.node_cell_index(k, i)] = (1.0 - s) * spec.m0()[i] + s * spec.m1()[i];
  }
  return {DensityField(g, std::move(m)), MomentumField::zeros(g)};
}

double sup_norm(const Eigen::VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

}  // namespace

PrimalState linear_interpolation_state(const ProblemSpec& spec) {
  return project_continuity(straight_line(spec), spec);
}

PrimalResult solve_primal(const ProblemSpec& spec, const PrimalConfig& cfg) {
  cfg.validate();
  const auto& grid = spec.grid();
  const auto& H = spec.hamiltonian();
  const auto& C = spec.coupling();
  const int nx = grid.n_x();
  const double cell = grid.dt() * grid.dx();

  const ContinuityProjector proj(spec);
  const int ncell = proj.num_centered() / 2;

  Eigen::VectorXd xU = proj.project_unknowns(proj.pack(straight_line(spec)));
  Eigen::VectorXd xC = proj.I() * xU + proj.c();
  Eigen::VectorXd zU = xU;
  Eigen::VectorXd zC = xC;
  Eigen::VectorXd yC(xC.size());

  auto value_of = [&](const Eigen::VectorXd& centered) {
    double sum = 0.0;
    for (int r = 0; r < ncell; ++r)
      sum += cell_integrand(centered[r], centered[ncell + r], spec.V()[r % nx], H, C);
    return sum * cell;
  };

  PrimalResult result{linear_interpolation_state(spec), {}};
  PrimalLog& log = result.log;
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd bestU = xU;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    proj.project_joint(zU, zC, xU, xC);
    for (int r = 0; r < ncell; ++r) {
      const auto p = prox_cell(2.0 * xC[r] - zC[r], 2.0 * xC[ncell + r] - zC[ncell + r], cfg.sigma,
                               spec.V()[r % nx], H, C);
      yC[r] = p.m;
      yC[ncell + r] = p.w;
    }
    // The U block has no objective, so its reflected point is 2 xU - zU.
    const Eigen::VectorXd dU = xU - zU;
    const Eigen::VectorXd dC = yC - xC;
    const double scale = std::max({1.0, sup_norm(xU), sup_norm(xC)});
    const double res = std::max(sup_norm(dU), sup_norm(dC)) / scale;
    zU += cfg.theta * dU;
    zC += cfg.theta * dC;

    log.iterations = it;
    log.values.push_back(value_of(xC));
    log.residuals.push_back(res);
    if (res < best) {
      best = res;
      bestU = xU;
    }
    if (res <= cfg.tol_kkt) {
      log.converged = true;
      break;
    }
  }

  result.state = proj.unpack(bestU);
  log.fixed_point_residual = best;
  log.final_value = functional_value(result.state, spec);
  log.feasibility = feasibility_defect(result.state, spec);
  if (log.feasibility > cfg.tol_mass) log.converged = false;
  return result;
}

}  // namespace mfp
