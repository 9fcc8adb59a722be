#pragma once

#include <memory>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "mfp/functional.hpp"
#include "mfp/problem.hpp"

namespace mfp {

/// Linear algebra of the discrete continuity constraint.
///
/// The free unknowns U stack m at interior time nodes (k = 1..n_t-1) and w at
/// the interior faces of every time cell (all faces on the torus). Endpoint
/// densities are data and interval boundary faces are zero. With this layout
///   continuity:  A U = b        (one row per time cell x space cell)
///   centering:   C = I U + c    (cell-centered m then w, see interpolate_to_centers)
///
/// The rows of A sum to zero over all space-time cells when the marginals have
/// equal mass, so the last row is dropped before factorizing.
class ContinuityProjector {
 public:
  using SpMat = Eigen::SparseMatrix<double>;
  using Vec = Eigen::VectorXd;

  explicit ContinuityProjector(const ProblemSpec& spec);

  int num_m() const { return nm_; }
  int num_w() const { return nw_; }
  int num_unknowns() const { return nm_ + nw_; }
  int num_centered() const { return 2 * ncell_; }

  /// Flat index in U of w at (time cell k, face j), or -1 on an interval boundary face.
  int w_index(int k, int j) const;

  Vec pack(const PrimalState& state) const;
  PrimalState unpack(const Vec& U) const;

  const SpMat& A() const { return A_; }
  const Vec& b() const { return b_; }
  const SpMat& I() const { return I_; }
  const Vec& c() const { return c_; }

  /// Euclidean projection of U onto {A U = b}.
  Vec project_unknowns(const Vec& U) const;

  /// Euclidean projection of (zU, zC) onto {A U = b, C = I U + c}.
  void project_joint(const Vec& zU, const Vec& zC, Vec& U, Vec& C) const;

 private:
  void factor_normal() const;
  void factor_joint() const;

  SpaceTimeGrid grid_;
  CellProfile m0_;
  CellProfile m1_;
  int nm_ = 0;
  int nw_ = 0;
  int ncell_ = 0;
  int faces_per_cell_ = 0;
  int first_face_ = 0;
  SpMat A_;  // reduced (last row dropped)
  Vec b_;
  SpMat I_;
  Vec c_;
  mutable std::unique_ptr<Eigen::SimplicialLDLT<SpMat>> normal_;
  mutable std::unique_ptr<Eigen::SparseLU<SpMat>> joint_;
};

/// Projection of a state onto {continuity residual = 0, interval boundary
/// fluxes = 0, m(0) = m0, m(T) = m1}.
PrimalState project_continuity(const PrimalState& state, const ProblemSpec& spec);

}  // namespace mfp
