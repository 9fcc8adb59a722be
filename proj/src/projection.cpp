#include "mfp/projection.hpp"

#include <vector>

#include "mfp/error.hpp"

namespace mfp {

using SpMat = ContinuityProjector::SpMat;
using Vec = ContinuityProjector::Vec;
using Triplet = Eigen::Triplet<double>;

ContinuityProjector::ContinuityProjector(const ProblemSpec& spec)
    : grid_(spec.grid()), m0_(spec.m0()), m1_(spec.m1()) {
  const int nt = grid_.n_t();
  const int nx = grid_.n_x();
  first_face_ = grid_.is_torus() ? 0 : 1;
  faces_per_cell_ = grid_.is_torus() ? nx : nx - 1;
  nm_ = (nt - 1) * nx;
  nw_ = nt * faces_per_cell_;
  ncell_ = nt * nx;
  const double dt = grid_.dt();
  const double dx = grid_.dx();

  auto m_index = [&](int k, int i) { return (k - 1) * nx + i; };

  // Continuity rows, the last one dropped.
  const int rows = ncell_ - 1;
  std::vector<Triplet> a;
  a.reserve(static_cast<std::size_t>(rows) * 4);
  b_ = Vec::Zero(rows);
  for (int k = 0; k < nt; ++k) {
    for (int i = 0; i < nx; ++i) {
      const int r = k * nx + i;
      if (r == rows) continue;
      if (k + 1 < nt) a.emplace_back(r, m_index(k + 1, i), 1.0 / dt);
      else b_[r] -= m1_[i] / dt;
      if (k > 0) a.emplace_back(r, m_index(k, i), -1.0 / dt);
      else b_[r] += m0_[i] / dt;
      const int wr = w_index(k, grid_.right_face(i));
      const int wl = w_index(k, grid_.left_face(i));
      if (wr >= 0) a.emplace_back(r, wr, -1.0 / dx);
      if (wl >= 0) a.emplace_back(r, wl, 1.0 / dx);
    }
  }
  A_.resize(rows, nm_ + nw_);
  A_.setFromTriplets(a.begin(), a.end());

  std::vector<Triplet> it;
  it.reserve(static_cast<std::size_t>(ncell_) * 4);
  c_ = Vec::Zero(2 * ncell_);
  for (int k = 0; k < nt; ++k) {
    for (int i = 0; i < nx; ++i) {
      const int r = k * nx + i;
      if (k > 0) it.emplace_back(r, m_index(k, i), 0.5);
      else c_[r] += 0.5 * m0_[i];
      if (k + 1 < nt) it.emplace_back(r, m_index(k + 1, i), 0.5);
      else c_[r] += 0.5 * m1_[i];
      const int wl = w_index(k, grid_.left_face(i));
      const int wr = w_index(k, grid_.right_face(i));
      if (wl >= 0) it.emplace_back(ncell_ + r, wl, 0.5);
      if (wr >= 0) it.emplace_back(ncell_ + r, wr, 0.5);
    }
  }
  I_.resize(2 * ncell_, nm_ + nw_);
  I_.setFromTriplets(it.begin(), it.end());
}

int ContinuityProjector::w_index(int k, int j) const {
  const int local = j - first_face_;
  if (local < 0 || local >= faces_per_cell_) return -1;
  return nm_ + k * faces_per_cell_ + local;
}

Vec ContinuityProjector::pack(const PrimalState& state) const {
  if (state.m.grid() != grid_ || state.w.grid() != grid_)
    throw ValidationError("state", "grid mismatch between state and projector");
  Vec U(nm_ + nw_);
  const int nx = grid_.n_x();
  for (int k = 1; k < grid_.n_t(); ++k)
    for (int i = 0; i < nx; ++i) U[(k - 1) * nx + i] = state.m.at(k, i);
  for (int k = 0; k < grid_.n_t(); ++k)
    for (int j = 0; j < grid_.num_faces(); ++j) {
      const int idx = w_index(k, j);
      if (idx >= 0) U[idx] = state.w.at(k, j);
    }
  return U;
}

PrimalState ContinuityProjector::unpack(const Vec& U) const {
  const int nt = grid_.n_t();
  const int nx = grid_.n_x();
  std::vector<double> m(static_cast<std::size_t>(nt + 1) * nx);
  for (int i = 0; i < nx; ++i) {
    m[grid_.node_cell_index(0, i)] = m0_[i];
    m[grid_.node_cell_index(nt, i)] = m1_[i];
  }
  for (int k = 1; k < nt; ++k)
    for (int i = 0; i < nx; ++i) m[grid_.node_cell_index(k, i)] = U[(k - 1) * nx + i];
  std::vector<double> w(static_cast<std::size_t>(nt) * grid_.num_faces(), 0.0);
  for (int k = 0; k < nt; ++k)
    for (int j = 0; j < grid_.num_faces(); ++j) {
      const int idx = w_index(k, j);
      if (idx >= 0) w[grid_.cell_face_index(k, j)] = U[idx];
    }
  return {DensityField(grid_, std::move(m)), MomentumField(grid_, std::move(w))};
}

void ContinuityProjector::factor_normal() const {
  if (normal_) return;
  SpMat AAt = A_ * A_.transpose();
  normal_ = std::make_unique<Eigen::SimplicialLDLT<SpMat>>();
  normal_->compute(AAt);
  if (normal_->info() != Eigen::Success)
    throw NumericalError("continuity projection: factorization of A A^T failed (grid " +
                         std::to_string(grid_.n_t()) + "x" + std::to_string(grid_.n_x()) + ")");
}

void ContinuityProjector::factor_joint() const {
  if (joint_) return;
  const int n = nm_ + nw_;
  const int r = static_cast<int>(A_.rows());
  SpMat M = I_.transpose() * I_;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(M.nonZeros() + 2 * A_.nonZeros() + n));
  for (int col = 0; col < M.outerSize(); ++col)
    for (SpMat::InnerIterator itr(M, col); itr; ++itr) t.emplace_back(itr.row(), itr.col(), itr.value());
  for (int i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
  for (int col = 0; col < A_.outerSize(); ++col)
    for (SpMat::InnerIterator itr(A_, col); itr; ++itr) {
      t.emplace_back(n + itr.row(), itr.col(), itr.value());
      t.emplace_back(itr.col(), n + itr.row(), itr.value());
    }
  SpMat K(n + r, n + r);
  K.setFromTriplets(t.begin(), t.end());
  K.makeCompressed();
  joint_ = std::make_unique<Eigen::SparseLU<SpMat>>();
  joint_->compute(K);
  if (joint_->info() != Eigen::Success)
    throw NumericalError("continuity projection: KKT factorization failed (grid " +
                         std::to_string(grid_.n_t()) + "x" + std::to_string(grid_.n_x()) + ")");
}

Vec ContinuityProjector::project_unknowns(const Vec& U) const {
  factor_normal();
  const Vec r = A_ * U - b_;
  const Vec lambda = normal_->solve(r);
  return U - A_.transpose() * lambda;
}

void ContinuityProjector::project_joint(const Vec& zU, const Vec& zC, Vec& U, Vec& C) const {
  factor_joint();
  const int n = nm_ + nw_;
  Vec rhs(n + A_.rows());
  rhs.head(n) = zU + I_.transpose() * (zC - c_);
  rhs.tail(A_.rows()) = b_;
  const Vec sol = joint_->solve(rhs);
  U = sol.head(n);
  C = I_ * U + c_;
}

PrimalState project_continuity(const PrimalState& state, const ProblemSpec& spec) {
  const ContinuityProjector proj(spec);
  return proj.unpack(proj.project_unknowns(proj.pack(state)));
}

}  // namespace mfp
