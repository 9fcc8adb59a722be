#pragma once

#include <vector>

#include "mfp/fields.hpp"
#include "mfp/grid.hpp"

namespace mfp {

/// Monotone piecewise-linear quantile function alpha -> x on [0, 1], stored
/// as breakpoints. Equal consecutive alphas encode jumps (empty cells); equal
/// consecutive x encode atoms.
struct Quantile {
  std::vector<double> alpha;
  std::vector<double> x;

  /// Quantile of a cell-wise constant density on a grid.
  static Quantile from_cells(const SpaceTimeGrid& grid, std::span<const double> density);

  double eval_left(double a) const;
  double eval_right(double a) const;
  /// Cumulative mass of (-inf, y]: the generalized inverse.
  double cdf(double y) const;
};

/// Displacement interpolation between two cell densities: the pushforward of
/// m0 by (1 - t/T) Id + (t/T) T_opt with T_opt the monotone rearrangement (on
/// the torus, the optimal rotation of the lifted quantile), sampled as cell
/// averages at every time node. Independent of the solver code.
DensityField geodesic_oracle_1d(std::span<const double> m0, std::span<const double> m1,
                                const SpaceTimeGrid& grid);

/// Optimal rotation theta of the lifted quantile of m1 on the torus, minimizing
/// int_0^1 (Q0(a) - Q1(a - theta))^2 da with Q1(a + 1) = Q1(a) + length.
double torus_rotation(const Quantile& q0, const Quantile& q1, double length);

/// max over time nodes of the L^1 distance sum_i |a - b| dx.
double max_l1_distance(const DensityField& a, const DensityField& b);

}  // namespace mfp
