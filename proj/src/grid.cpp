#include "mfp/grid.hpp"

#include <cmath>

#include "mfp/error.hpp"

namespace mfp {

std::string to_string(Topology topology) {
  return topology == Topology::Torus ? "torus" : "interval-neumann";
}

Topology topology_from_string(const std::string& name) {
  if (name == "interval-neumann" || name == "interval") return Topology::IntervalNeumann;
  if (name == "torus") return Topology::Torus;
  throw ValidationError("grid.topology", "unknown topology '" + name + "'");
}

SpaceTimeGrid::SpaceTimeGrid(double T, double x_min, double x_max, int n_t, int n_x,
                             Topology topology)
    : T_(T), x_min_(x_min), x_max_(x_max), n_t_(n_t), n_x_(n_x), topology_(topology) {
  if (!std::isfinite(T) || T <= 0.0) throw ValidationError("grid.T", "must be finite and > 0");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || x_max <= x_min)
    throw ValidationError("grid.x_max", "need finite x_min < x_max");
  if (n_t < 2) throw ValidationError("grid.n_t", "must be >= 2");
  if (n_x < 2) throw ValidationError("grid.n_x", "must be >= 2");
  if (!(dt() > 0.0) || !(dx() > 0.0))
    throw ValidationError("grid", "cell widths underflow to zero");
}

int SpaceTimeGrid::neighbor_cell(int i) const {
  if (is_torus()) return ((i % n_x_) + n_x_) % n_x_;
  if (i < 0) return -i - 1;
  if (i >= n_x_) return 2 * n_x_ - i - 1;
  return i;
}

std::pair<int, int> SpaceTimeGrid::node_cell_coords(std::size_t idx) const {
  return {static_cast<int>(idx / n_x_), static_cast<int>(idx % n_x_)};
}

std::pair<int, int> SpaceTimeGrid::cell_face_coords(std::size_t idx) const {
  const auto nf = static_cast<std::size_t>(num_faces());
  return {static_cast<int>(idx / nf), static_cast<int>(idx % nf)};
}

std::pair<int, int> SpaceTimeGrid::vertex_coords(std::size_t idx) const {
  return cell_face_coords(idx);
}

bool SpaceTimeGrid::operator==(const SpaceTimeGrid& other) const {
  return T_ == other.T_ && x_min_ == other.x_min_ && x_max_ == other.x_max_ &&
         n_t_ == other.n_t_ && n_x_ == other.n_x_ && topology_ == other.topology_;
}

SpaceTimeGrid SpaceTimeGrid::refined() const {
  return SpaceTimeGrid(T_, x_min_, x_max_, 2 * n_t_, 2 * n_x_, topology_);
}

}  // namespace mfp
