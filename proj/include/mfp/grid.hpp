#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace mfp {

enum class Topology { IntervalNeumann, Torus };

std::string to_string(Topology topology);
Topology topology_from_string(const std::string& name);

/// Uniform staggered discretization of Q = (0,T) x (x_min, x_max).
///
/// Locations carried by the grid:
///   time nodes   t_k = k*dt,            k = 0..n_t
///   time cells   (t_k, t_{k+1}),        k = 0..n_t-1
///   space cells  [x_{i-1/2}, x_{i+1/2}], i = 0..n_x-1, center x_i
///   space faces  x_{j-1/2},             j = 0..n_x   (interval)
///                                        j = 0..n_x-1 (torus, face 0 == face n_x)
///   vertices     (t_k, x_{j-1/2})       (the corner nodes of the space-time mesh)
///
/// Face j is the left face of cell j; the right face of cell i is face i+1
/// (wrapped to 0 on the torus).
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(double T, double x_min, double x_max, int n_t, int n_x,
                Topology topology = Topology::IntervalNeumann);

  double T() const { return T_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double length() const { return x_max_ - x_min_; }
  int n_t() const { return n_t_; }
  int n_x() const { return n_x_; }
  Topology topology() const { return topology_; }
  bool is_torus() const { return topology_ == Topology::Torus; }

  double dt() const { return T_ / n_t_; }
  double dx() const { return (x_max_ - x_min_) / n_x_; }

  int num_time_nodes() const { return n_t_ + 1; }
  int num_time_cells() const { return n_t_; }
  int num_cells() const { return n_x_; }
  int num_faces() const { return is_torus() ? n_x_ : n_x_ + 1; }
  /// Space-time vertex count: (n_t+1)(n_x+1) on the interval, (n_t+1) n_x on the torus.
  int num_vertices() const { return num_time_nodes() * num_faces(); }

  double time(int k) const { return k * dt(); }
  double cell_center(int i) const { return x_min_ + (i + 0.5) * dx(); }
  double face_position(int j) const { return x_min_ + j * dx(); }

  int left_face(int i) const { return i; }
  int right_face(int i) const { return is_torus() ? (i + 1) % n_x_ : i + 1; }
  /// Cell index with periodic wrap on the torus and reflection about the
  /// boundary face on the interval (ghost cell -1 maps to 0, n_x to n_x-1).
  int neighbor_cell(int i) const;

  // Flat indices. Density-like data: (time node, cell). Momentum: (time cell, face).
  std::size_t node_cell_index(int k, int i) const { return static_cast<std::size_t>(k) * n_x_ + i; }
  std::size_t cell_face_index(int k, int j) const {
    return static_cast<std::size_t>(k) * num_faces() + j;
  }
  std::size_t vertex_index(int k, int j) const {
    return static_cast<std::size_t>(k) * num_faces() + j;
  }
  std::pair<int, int> node_cell_coords(std::size_t idx) const;
  std::pair<int, int> cell_face_coords(std::size_t idx) const;
  std::pair<int, int> vertex_coords(std::size_t idx) const;

  bool operator==(const SpaceTimeGrid& other) const;
  bool operator!=(const SpaceTimeGrid& other) const { return !(*this == other); }

  /// Same domain and topology with both resolutions doubled.
  SpaceTimeGrid refined() const;

 private:
  double T_;
  double x_min_;
  double x_max_;
  int n_t_;
  int n_x_;
  Topology topology_;
};

}  // namespace mfp
