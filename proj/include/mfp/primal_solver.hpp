#pragma once

#include <vector>

#include "mfp/functional.hpp"
#include "mfp/problem.hpp"

namespace mfp {

struct PrimalConfig {
  double sigma = 1.0;      ///< prox step
  double theta = 1.8;      ///< over-relaxation in [1, 2)
  double tol_kkt = 1e-6;   ///< relative fixed-point increment
  double tol_mass = 1e-8;  ///< feasibility of the returned state
  int max_iters = 50000;

  void validate() const;
};

struct PrimalLog {
  int iterations = 0;
  bool converged = false;
  double final_value = 0.0;
  double feasibility = 0.0;
  double fixed_point_residual = 0.0;
  /// Functional value (dt dx scaled) of the feasible iterate, one per iteration.
  std::vector<double> values;
  std::vector<double> residuals;
};

struct PrimalResult {
  PrimalState state;
  PrimalLog log;
};

/// Straight-line interpolation (1 - t/T) m0 + (t/T) m1 completed with the
/// least-squares momentum from one continuity projection.
PrimalState linear_interpolation_state(const ProblemSpec& spec);

/// Douglas-Rachford splitting between the cell-separable integrand (prox per
/// cell) and the affine set {continuity, centering}. Returns the feasible
/// iterate; when max_iters is hit the best iterate seen is returned with
/// converged = false.
PrimalResult solve_primal(const ProblemSpec& spec, const PrimalConfig& cfg = {});

}  // namespace mfp
