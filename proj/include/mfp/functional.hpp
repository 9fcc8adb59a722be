#pragma once

#include <vector>

#include "mfp/fields.hpp"
#include "mfp/problem.hpp"

namespace mfp {

/// Primal variables on the staggered grid: density m on (time node, cell),
/// momentum w = m v on (time cell, face).
struct PrimalState {
  DensityField m;
  MomentumField w;
};

/// Cell-centered values on (time cell, space cell) obtained by averaging m
/// over the two adjacent time nodes and w over the two faces of the cell.
struct CenteredState {
  std::vector<double> m;
  std::vector<double> w;
};

CenteredState interpolate_to_centers(const PrimalState& state);

/// Integrand at one space-time cell:
///   m L(w/m) + eps m (log m - 1) + V m + F(m)
/// with the perspective closure 0 at (m, w) = (0, 0) and +inf for m = 0, w != 0
/// or m < 0. The perspective form is jointly convex in (m, w).
double cell_integrand(double m, double w, double V, const HamiltonianSpec& H,
                      const CouplingSpec& C);

/// dt dx sum over space-time cells of cell_integrand at the centered values.
double functional_value(const PrimalState& state, const ProblemSpec& spec);

/// Same functional with the entropy written relative to the Gibbs reference
/// e^{-V/eps} dx, i.e. eps m log m + V m in place of eps m (log m - 1) + V m.
/// Differs from functional_value by eps * dt dx * sum(centered m).
double functional_value_relative_entropy(const PrimalState& state, const ProblemSpec& spec);

/// Per (time cell, space cell):
///   (m[k+1,i] - m[k,i]) / dt - (w[k,right(i)] - w[k,left(i)]) / dx.
/// Linear in (m, w); the endpoint slices are the state's own. The interval's
/// boundary faces enter with whatever value the state carries there.
std::vector<double> continuity_residual(const PrimalState& state);

/// max |continuity residual|, max |m(0) - m0|, max |m(T) - m1| and the
/// boundary flux on the interval, combined as a sup-norm.
double feasibility_defect(const PrimalState& state, const ProblemSpec& spec);

struct ProxResult {
  double m = 0.0;
  double w = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// argmin over (m >= 0, w) of
///   cell_integrand(m, w, V) + ((m - mbar)^2 + (w - wbar)^2) / (2 sigma).
/// For fixed m the w-problem is solved through the slope p with
/// sigma p + m H_p(p) = wbar (then w = m H_p(p)); the remaining scalar
/// stationarity condition in m is monotone and solved by safeguarded Newton
/// (in log m when eps > 0). Throws NumericalError after 100 failed iterations.
ProxResult prox_cell(double mbar, double wbar, double sigma, double V, const HamiltonianSpec& H,
                     const CouplingSpec& C);

}  // namespace mfp
