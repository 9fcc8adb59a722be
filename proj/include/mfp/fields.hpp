#pragma once

#include <span>
#include <vector>

#include "mfp/grid.hpp"

namespace mfp {

/// A spatial profile on the cells of a grid (one time slice), e.g. a marginal
/// density or the potential V.
using CellProfile = std::vector<double>;

/// Density m on (time node, space cell); units 1/length.
class DensityField {
 public:
  DensityField(SpaceTimeGrid grid, std::vector<double> values);
  static DensityField zeros(const SpaceTimeGrid& grid);

  const SpaceTimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double at(int k, int i) const { return values_[grid_.node_cell_index(k, i)]; }
  std::span<const double> slice(int k) const;
  double min_value() const;

 private:
  SpaceTimeGrid grid_;
  std::vector<double> values_;
};

/// Momentum w = m v on (time cell, space face). Boundary faces of the
/// interval carry zero flux.
class MomentumField {
 public:
  MomentumField(SpaceTimeGrid grid, std::vector<double> values);
  static MomentumField zeros(const SpaceTimeGrid& grid);

  const SpaceTimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double at(int k, int j) const { return values_[grid_.cell_face_index(k, j)]; }

 private:
  SpaceTimeGrid grid_;
  std::vector<double> values_;
};

/// Potential u on (time node, cell center), colocated with the density so
/// that the recovered density and the marginals are sampled at the same points.
class PotentialField {
 public:
  PotentialField(SpaceTimeGrid grid, std::vector<double> values);
  static PotentialField zeros(const SpaceTimeGrid& grid);

  const SpaceTimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double at(int k, int i) const { return values_[grid_.node_cell_index(k, i)]; }

 private:
  SpaceTimeGrid grid_;
  std::vector<double> values_;
};

/// Discrete integral over the domain of one time slice: sum_i m(k,i) dx.
double mass(const DensityField& field, int t_index);
double mass(std::span<const double> profile, double dx);

/// Shift a cell profile by `shift` cells on the torus (result[i] = p[i - shift]).
CellProfile shift_cells(std::span<const double> profile, int shift);

}  // namespace mfp
