#include "mfp/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfp/error.hpp"

namespace mfp {
namespace {

void check_values(const std::vector<double>& values, std::size_t expected, const char* what) {
  if (values.size() != expected)
    throw ValidationError(what, "expected " + std::to_string(expected) + " values, got " +
                                    std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError(what, "non-finite value");
}

}  // namespace

DensityField::DensityField(SpaceTimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  check_values(values_, static_cast<std::size_t>(grid_.num_time_nodes()) * grid_.num_cells(),
               "density");
}

DensityField DensityField::zeros(const SpaceTimeGrid& grid) {
  return {grid, std::vector<double>(static_cast<std::size_t>(grid.num_time_nodes()) *
                                    grid.num_cells())};
}

std::span<const double> DensityField::slice(int k) const {
  return std::span<const double>(values_).subspan(grid_.node_cell_index(k, 0),
                                                  static_cast<std::size_t>(grid_.n_x()));
}

double DensityField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

MomentumField::MomentumField(SpaceTimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  check_values(values_, static_cast<std::size_t>(grid_.num_time_cells()) * grid_.num_faces(),
               "momentum");
}

MomentumField MomentumField::zeros(const SpaceTimeGrid& grid) {
  return {grid, std::vector<double>(static_cast<std::size_t>(grid.num_time_cells()) *
                                    grid.num_faces())};
}

PotentialField::PotentialField(SpaceTimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  check_values(values_, static_cast<std::size_t>(grid_.num_time_nodes()) * grid_.num_cells(),
               "potential");
}

PotentialField PotentialField::zeros(const SpaceTimeGrid& grid) {
  return {grid, std::vector<double>(static_cast<std::size_t>(grid.num_time_nodes()) *
                                    grid.num_cells())};
}

double mass(std::span<const double> profile, double dx) {
  double sum = 0.0;
  for (double v : profile) sum += v;
  return sum * dx;
}

double mass(const DensityField& field, int t_index) {
  return mass(field.slice(t_index), field.grid().dx());
}

CellProfile shift_cells(std::span<const double> profile, int shift) {
  const int n = static_cast<int>(profile.size());
  CellProfile out(profile.size());
  for (int i = 0; i < n; ++i) out[i] = profile[((i - shift) % n + n) % n];
  return out;
}

}  // namespace mfp
