#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfp/dual_solver.hpp"
#include "mfp/fields.hpp"
#include "mfp/functional.hpp"
#include "mfp/primal_solver.hpp"
#include "mfp/problem.hpp"

namespace mfp {

struct CheckResult {
  std::string name;
  std::string formula;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string reason;
  std::map<std::string, double> values;
};

struct EstimateReport {
  std::vector<CheckResult> checks;
  std::map<std::string, double> constants;

  /// True when every non-skipped check passes.
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

/// Convex test functions for the displacement convexity inequality.
struct UFamily {
  enum class Kind { Power, QuadraticAboveLevel, Linear };
  Kind kind = Kind::Power;
  double p = 2.0;      ///< Power: U(r) = r^p, p >= 2
  double level = 0.0;  ///< QuadraticAboveLevel: U(r) = (r - level)_+^2

  static UFamily power(double p);
  static UFamily quadratic_above(double level);
  static UFamily linear();

  double U(double r) const;
  /// P(r) = U'(r) r - U(r).
  double P(double r) const;
  double dP(double r) const;
};

/// Per interior time node k: LHS_k, the centered second difference in time of
/// sum_i U(m) dx, and RHS_k, the one-dimensional right-hand side
///   sum_i P'(m) m [ (H_p(u_x))_x ]^2 dx
/// + sum_faces P'(m) (f'(m) + eps/m) H_pp m_x^2 dx
/// + sum_faces P'(m) H_pp m_x V_x dx
/// with H_p(u_x), m_x, V_x on faces (zero flux on interval boundary faces).
struct DisplacementProfile {
  std::vector<double> lhs;
  std::vector<double> rhs;
  /// max_k max(0, RHS_k - LHS_k) / (1 + |LHS_k| + |RHS_k|).
  double violation = 0.0;
};

DisplacementProfile displacement_profile(const DensityField& m, const PotentialField& u,
                                         const ProblemSpec& spec, const UFamily& family);

/// Single-grid check: passes iff violation <= tol_disc. A negative tol_disc
/// selects the default C_grid (dt + dx) with C_grid = 1.
CheckResult check_displacement_convexity(const DensityField& m, const PotentialField& u,
                                         const ProblemSpec& spec, const UFamily& family,
                                         double tol_disc = -1.0);

/// Grid-halving protocol: passes iff the fine violation is zero or at most
/// `ratio` times the coarse one (first-order decay gives 1/2).
CheckResult displacement_refinement(const DisplacementProfile& coarse, const DisplacementProfile& fine,
                                    double ratio = 0.6);

/// ||m(t)||_p with the sum over cells; p = infinity is the max over cells.
double lp_norm(std::span<const double> profile, double dx, double p);

struct LpProfile {
  std::vector<double> p_values;
  /// K0 per p: sup_t ||m(t)||_p / (||m0||_p + ||m1||_p + 1).
  std::vector<double> K0;
  /// K1 per p: smallest constant with ||m(t)||_p <= K1 (t^-q + (T-t)^-q) on interior nodes.
  std::vector<double> K1;
  double q = 1.0;
};

LpProfile lp_profile(const DensityField& m, const ProblemSpec& spec, double q = 1.0);

/// Global and local L^p bounds for p in {1, 2, 4, inf}. Without the growth
/// hypothesis on f only p = 1 is checked.
CheckResult check_lp_bounds(const DensityField& m, const ProblemSpec& spec);

/// Stability of K0 (relative spread <= tol) over a refinement study.
CheckResult lp_refinement(const std::vector<LpProfile>& studies, double tol = 0.2);

/// sup_x theta H(u_x) + eps log m at each interior time node, with the fitted
/// barrier L (t^-2 + (T-t)^-2) + L0. Skipped unless f = 0.
CheckResult check_local_gradient_estimate(const PotentialField& u, const DensityField& m,
                                          const ProblemSpec& spec);

/// sum u(T) m(T) dx - sum u(0) m(0) dx against
/// -int int m (H_p(u_x) u_x - H(u_x)) - int int (f_eps(m) + V) m
/// (trapezoid in time). Passes iff the relative gap <= 10 (dt + dx).
CheckResult check_energy_identity(const PotentialField& u, const DensityField& m,
                                  const ProblemSpec& spec);

/// Interior max |D_t u| <= boundary max |D_t u| + 10 (dt + dx).
CheckResult check_ut_maximum_principle(const PotentialField& u, const ProblemSpec& spec);

/// delta ||u||_inf <= sup |data at t=0| + sup |data at t=T| at every stage of the log.
CheckResult check_sup_bound(const DualLog& log);

/// C = ||Du||_inf / (1 + ||u||_inf); recorded, passes when finite.
CheckResult check_gradient_bound(const PotentialField& u);

/// -u_t + H(u_x) bounded in the interior by max(gamma1, its max at t = 0, T)
/// + 10 (dt + dx). Skipped unless V is convex and m f'(m) nondecreasing.
CheckResult check_m_upper_bound(const PotentialField& u, const ProblemSpec& spec);

/// Primal state rebuilt from a dual solution: m as given, w on faces as the
/// time/space average of m times H_p of the face difference of u.
PrimalState primal_from_dual(const PotentialField& u, const DensityField& m, const ProblemSpec& spec);

/// |J(primal) - J(rebuilt dual)| / (1 + |J(primal)|).
double duality_gap(const PrimalState& primal, const PotentialField& u, const DensityField& m,
                   const ProblemSpec& spec);

/// sum over nodes (trapezoid weights in time) of |a - b| dt dx.
double l1_space_time(const DensityField& a, const DensityField& b);

struct SweepEntry {
  double epsilon = 0.0;
  double error = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  bool monotone = false;
  bool converged = false;
  bool pass = false;
};

/// Primal solves for each epsilon (f = 0 template); error is the max over
/// time nodes of the L^1 distance to the geodesic oracle. Passes iff every
/// solve converged and the error is nonincreasing as epsilon decreases,
/// allowing `floor` as the discretization floor.
SweepReport eps_sweep(const ProblemSpec& templ, const std::vector<double>& eps_list,
                      const PrimalConfig& cfg, double floor = 0.0);

/// Checks that only need a converged dual solve.
EstimateReport verify_dual(const DualResult& dual, const ProblemSpec& spec,
                           const std::vector<std::string>& names);

/// Names accepted by verify_dual.
const std::vector<std::string>& dual_check_names();

}  // namespace mfp
