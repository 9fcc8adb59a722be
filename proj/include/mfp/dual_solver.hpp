#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "mfp/fields.hpp"
#include "mfp/problem.hpp"

namespace mfp {

/// Penalization and homotopy parameters of one continuation stage.
struct DualParams {
  double rho = 0.0;
  double delta = 0.0;
  double tau = 1.0;
  /// Lag m inside the diffusion coefficient (drop its derivative from the Jacobian).
  bool picard = false;
};

struct ContinuationSchedule {
  std::vector<double> rho_sequence;
  std::vector<double> delta_sequence;
  std::vector<double> tau_sequence;
  double tol_residual = 1e-9;  ///< sup-norm of the residual
  double tol_step = 1e-12;     ///< sup-norm of the Newton step relative to 1 + |u|
  int max_newton_iters = 50;
  bool picard = false;

  /// rho, delta: 1 down to 1e-8 by factors of 10; tau: 0, 1/4, 1/2, 3/4, 1.
  static ContinuationSchedule defaults();
  void validate() const;
};

/// Residual of the discrete regularized problem, one row per node (k, i):
/// interior rows for 0 < k < n_t, the nonlinear Neumann rows at k = 0 and
/// k = n_t. `lateral` holds H_p of the one-sided spatial difference at the two
/// interval boundary faces per time node; with the reflected ghost values it is
/// zero by construction and is kept for reporting.
struct DualResidual {
  Eigen::VectorXd rows;
  std::vector<double> lateral;

  double sup_interior(const SpaceTimeGrid& grid) const;
  double sup_boundary(const SpaceTimeGrid& grid) const;
  double sup_norm() const;
};

/// Pointwise recovery m = phi_tau(-u_t + H(u_x) - tau V): centered u_t inside,
/// second-order one-sided at t = 0 and t = T.
DensityField m_from_u(const PotentialField& u, const ProblemSpec& spec, double tau = 1.0);

DualResidual assemble_residual(const PotentialField& u, const ProblemSpec& spec,
                               const DualParams& params);

/// Exact derivative of assemble_residual().rows with respect to u (node order
/// of PotentialField), including the dependence of m on u unless picard is set.
Eigen::SparseMatrix<double> assemble_jacobian(const PotentialField& u, const ProblemSpec& spec,
                                              const DualParams& params);

/// Throws NumericalError when the Hamiltonian is degenerate or epsilon = 0.
void require_dual_admissible(const ProblemSpec& spec);

struct DualStageLog {
  double rho = 0.0;
  double delta = 0.0;
  double tau = 0.0;
  int newton_iters = 0;
  double residual = 0.0;
  bool converged = false;
  double sup_u = 0.0;         ///< before normalization
  double sup_bound_rhs = 0.0; ///< sup-norm of the two boundary data profiles
  double grad_sup = 0.0;      ///< sup of |D_t u|, |D_x u| after normalization
};

struct DualLog {
  std::vector<DualStageLog> stages;
  bool converged = false;
  int total_newton_iters = 0;
  double final_residual = 0.0;
  int refinements = 0;
  std::string message;
};

struct DualResult {
  PotentialField u;  ///< normalized: sum u(T) m1 dx = 0
  PotentialField u_raw;
  DensityField m;
  DualLog log;
};

DualResult solve_dual(const ProblemSpec& spec,
                      const ContinuationSchedule& schedule = ContinuationSchedule::defaults());

/// u - sum_i u(T, i) m1_i dx.
PotentialField normalize_potential(const PotentialField& u, const ProblemSpec& spec);

}  // namespace mfp
