#include "mfp/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/SparseLU>

#include "mfp/error.hpp"

namespace mfp {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

ContinuationSchedule ContinuationSchedule::defaults() {
  ContinuationSchedule s;
  for (int j = 0; j <= 8; ++j) {
    s.rho_sequence.push_back(std::pow(10.0, -j));
    s.delta_sequence.push_back(std::pow(10.0, -j));
  }
  s.tau_sequence = {0.0, 0.25, 0.5, 0.75, 1.0};
  return s;
}

void ContinuationSchedule::validate() const {
  auto check_decreasing = [](const std::vector<double>& seq, const char* key) {
    if (seq.empty()) throw ValidationError(key, "must not be empty");
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (!(seq[i] > 0.0)) throw ValidationError(key, "entries must be > 0");
      if (i > 0 && !(seq[i] < seq[i - 1])) throw ValidationError(key, "must be strictly decreasing");
    }
  };
  check_decreasing(rho_sequence, "dual.rho_sequence");
  check_decreasing(delta_sequence, "dual.delta_sequence");
  if (tau_sequence.empty()) throw ValidationError("dual.tau_sequence", "must not be empty");
  for (std::size_t i = 0; i < tau_sequence.size(); ++i) {
    if (!(tau_sequence[i] >= 0.0 && tau_sequence[i] <= 1.0))
      throw ValidationError("dual.tau_sequence", "entries must lie in [0, 1]");
    if (i > 0 && !(tau_sequence[i] > tau_sequence[i - 1]))
      throw ValidationError("dual.tau_sequence", "must be strictly increasing");
  }
  if (tau_sequence.back() != 1.0) throw ValidationError("dual.tau_sequence", "must end at 1");
  if (!(tol_residual > 0.0)) throw ValidationError("dual.tol_residual", "must be > 0");
  if (!(tol_step > 0.0)) throw ValidationError("dual.tol_step", "must be > 0");
  if (max_newton_iters < 1) throw ValidationError("dual.max_newton_iters", "must be >= 1");
}

double DualResidual::sup_interior(const SpaceTimeGrid& grid) const {
  const int nx = grid.n_x();
  double s = 0.0;
  for (int r = nx; r < grid.n_t() * nx; ++r) s = std::max(s, std::abs(rows[r]));
  return s;
}

double DualResidual::sup_boundary(const SpaceTimeGrid& grid) const {
  const int nx = grid.n_x();
  double s = 0.0;
  for (int i = 0; i < nx; ++i)
    s = std::max({s, std::abs(rows[i]), std::abs(rows[grid.n_t() * nx + i])});
  return s;
}

double DualResidual::sup_norm() const {
  double s = rows.size() ? rows.lpNorm<Eigen::Infinity>() : 0.0;
  for (double v : lateral) s = std::max(s, std::abs(v));
  return s;
}

void require_dual_admissible(const ProblemSpec& spec) {
  if (!spec.hamiltonian().nondegenerate())
    throw NumericalError(
        "dual solver needs a nondegenerate Hamiltonian (varpi > 0 or q = 2); use the primal solver");
  if (!(spec.epsilon() > 0.0)) throw NumericalError("dual solver needs epsilon > 0");
}

namespace {

// Flat evaluation on a raw node vector. Fills R and, when J is given, the
// Jacobian triplets.
class DualOperator {
 public:
  DualOperator(const ProblemSpec& spec, const DualParams& p)
      : spec_(spec), g_(spec.grid()), H_(spec.hamiltonian()), C_(spec.coupling()), p_(p) {
    const int nx = g_.n_x();
    data0_.resize(nx);
    data1_.resize(nx);
    const double eps = C_.epsilon();
    for (int i = 0; i < nx; ++i) {
      data0_[i] = p.tau * (C_.f(spec.m0()[i]) + spec.V()[i]) + eps * std::log(spec.m0()[i]);
      data1_[i] = p.tau * (C_.f(spec.m1()[i]) + spec.V()[i]) + eps * std::log(spec.m1()[i]);
    }
  }

  double boundary_data_sup() const {
    double a = 0.0, b = 0.0;
    for (double v : data0_) a = std::max(a, std::abs(v));
    for (double v : data1_) b = std::max(b, std::abs(v));
    return a + b;
  }

  void eval(const Vec& u, Vec& R, std::vector<Triplet>* J) const {
    const int nt = g_.n_t();
    const int nx = g_.n_x();
    const double dt = g_.dt();
    const double dx = g_.dx();
    const double eps = C_.epsilon();
    const double tau = p_.tau;
    R.resize(u.size());
    auto idx = [nx](int k, int i) { return k * nx + i; };
    auto U = [&](int k, int i) { return u[idx(k, i)]; };

    for (int k = 0; k <= nt; ++k) {
      for (int i = 0; i < nx; ++i) {
        const int ip = g_.neighbor_cell(i + 1);
        const int im = g_.neighbor_cell(i - 1);
        const int row = idx(k, i);
        const double ux = (U(k, ip) - U(k, im)) / (2.0 * dx);
        const auto h = H_.eval(ux);

        if (k == 0 || k == nt) {
          const bool start = k == 0;
          double ut;
          if (start) ut = (-3.0 * U(0, i) + 4.0 * U(1, i) - U(2, i)) / (2.0 * dt);
          else ut = (3.0 * U(nt, i) - 4.0 * U(nt - 1, i) + U(nt - 2, i)) / (2.0 * dt);
          const double sgn = start ? 1.0 : -1.0;
          R[row] = -ut + h.H + sgn * p_.delta * U(k, i) - (start ? data0_[i] : data1_[i]);
          if (J) {
            const double s = 1.0 / (2.0 * dt);
            if (start) {
              J->emplace_back(row, idx(0, i), 3.0 * s + p_.delta);
              J->emplace_back(row, idx(1, i), -4.0 * s);
              J->emplace_back(row, idx(2, i), s);
            } else {
              J->emplace_back(row, idx(nt, i), -3.0 * s - p_.delta);
              J->emplace_back(row, idx(nt - 1, i), 4.0 * s);
              J->emplace_back(row, idx(nt - 2, i), -s);
            }
            J->emplace_back(row, idx(k, ip), h.Hp / (2.0 * dx));
            J->emplace_back(row, idx(k, im), -h.Hp / (2.0 * dx));
          }
          continue;
        }

        const double ut = (U(k + 1, i) - U(k - 1, i)) / (2.0 * dt);
        const double utt = (U(k + 1, i) - 2.0 * U(k, i) + U(k - 1, i)) / (dt * dt);
        const double uxx = (U(k, ip) - 2.0 * U(k, i) + U(k, im)) / (dx * dx);
        const double utx =
            (U(k + 1, ip) - U(k + 1, im) - U(k - 1, ip) + U(k - 1, im)) / (4.0 * dt * dx);
        const double m = C_.phi(-ut + h.H - tau * spec_.V()[i], tau);
        const double a = eps + tau * m * C_.df(m);
        const double dV = spec_.dV()[i];
        R[row] = -utt + 2.0 * h.Hp * utx - (h.Hp * h.Hp + a * h.Hpp) * uxx + tau * dV * h.Hp +
                 p_.rho * U(k, i);
        if (!J) continue;

        // d m / d g = m / a with g = -u_t + H(u_x) - tau V.
        const double da_dg = p_.picard ? 0.0 : tau * (C_.df(m) + m * C_.d2f(m)) * m / a;
        const double Hppp = H_.third_derivative(ux);
        const double c_ut = h.Hpp * uxx * da_dg;
        const double c_ux = 2.0 * h.Hpp * utx - (2.0 * h.Hp * h.Hpp + a * Hppp) * uxx -
                            h.Hpp * uxx * da_dg * h.Hp + tau * dV * h.Hpp;
        const double c_utt = -1.0;
        const double c_uxx = -(h.Hp * h.Hp + a * h.Hpp);
        const double c_utx = 2.0 * h.Hp;

        J->emplace_back(row, idx(k + 1, i), c_ut / (2.0 * dt) + c_utt / (dt * dt));
        J->emplace_back(row, idx(k - 1, i), -c_ut / (2.0 * dt) + c_utt / (dt * dt));
        J->emplace_back(row, idx(k, i), -2.0 * c_utt / (dt * dt) - 2.0 * c_uxx / (dx * dx) + p_.rho);
        J->emplace_back(row, idx(k, ip), c_ux / (2.0 * dx) + c_uxx / (dx * dx));
        J->emplace_back(row, idx(k, im), -c_ux / (2.0 * dx) + c_uxx / (dx * dx));
        const double w = c_utx / (4.0 * dt * dx);
        J->emplace_back(row, idx(k + 1, ip), w);
        J->emplace_back(row, idx(k + 1, im), -w);
        J->emplace_back(row, idx(k - 1, ip), -w);
        J->emplace_back(row, idx(k - 1, im), w);
      }
    }
  }

  double sup_residual(const Vec& u) const {
    Vec R;
    eval(u, R, nullptr);
    double s = 0.0;
    for (int r = 0; r < R.size(); ++r) {
      if (!std::isfinite(R[r])) return std::numeric_limits<double>::infinity();
      s = std::max(s, std::abs(R[r]));
    }
    return s;
  }

  SpMat jacobian(const Vec& u) const {
    Vec R;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(u.size()) * 9);
    eval(u, R, &t);
    SpMat J(u.size(), u.size());
    J.setFromTriplets(t.begin(), t.end());
    J.makeCompressed();
    return J;
  }

 private:
  const ProblemSpec& spec_;
  const SpaceTimeGrid& g_;
  const HamiltonianSpec& H_;
  const CouplingSpec& C_;
  DualParams p_;
  std::vector<double> data0_;
  std::vector<double> data1_;
};

Vec to_vec(const PotentialField& u) {
  return Eigen::Map<const Vec>(u.values().data(), static_cast<Eigen::Index>(u.values().size()));
}

PotentialField to_field(const SpaceTimeGrid& g, const Vec& v) {
  return PotentialField(g, std::vector<double>(v.data(), v.data() + v.size()));
}

void check_grid(const PotentialField& u, const ProblemSpec& spec) {
  if (u.grid() != spec.grid()) throw ValidationError("u", "grid mismatch between potential and problem");
}

struct NewtonOutcome {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

NewtonOutcome newton(const DualOperator& op, Vec& u, const ContinuationSchedule& s) {
  NewtonOutcome out;
  double r = op.sup_residual(u);
  if (!std::isfinite(r)) return out;
  double tol = s.tol_residual;
  for (int it = 1; it <= s.max_newton_iters; ++it) {
    out.iterations = it;
    if (r <= tol) {
      out.converged = true;
      out.residual = r;
      return out;
    }
    Vec R;
    op.eval(u, R, nullptr);
    const SpMat J = op.jacobian(u);
    // Residual rows cannot be evaluated below roughly eps |J| |u| in floating point.
    double jnorm = 0.0;
    {
      Vec rows = Vec::Zero(J.rows());
      for (int c = 0; c < J.outerSize(); ++c)
        for (SpMat::InnerIterator e(J, c); e; ++e) rows[e.row()] += std::abs(e.value());
      jnorm = rows.maxCoeff();
    }
    tol = std::max(s.tol_residual, 10.0 * std::numeric_limits<double>::epsilon() * jnorm *
                                       u.lpNorm<Eigen::Infinity>());
    if (r <= tol) {
      out.converged = true;
      out.residual = r;
      return out;
    }
    Eigen::SparseLU<SpMat> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success) break;
    const Vec d = lu.solve(-R);
    if (!d.allFinite()) break;
    const double dsup = d.lpNorm<Eigen::Infinity>();
    const double usup = u.lpNorm<Eigen::Infinity>();

    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving, alpha *= 0.5) {
      const Vec trial = u + alpha * d;
      const double rt = op.sup_residual(trial);
      if (rt <= (1.0 - 1e-4 * alpha) * r) {
        u = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    // No decrease available: the residual is at its rounding floor when the
    // full Newton step is already negligible.
    if (!accepted) {
      out.residual = r;
      out.converged = dsup <= 1e3 * s.tol_step * (1.0 + usup);
      return out;
    }
    if (alpha == 1.0 && dsup <= s.tol_step * (1.0 + usup)) {
      out.converged = true;
      out.residual = r;
      return out;
    }
  }
  out.residual = r;
  out.converged = r <= tol;
  return out;
}

double gradient_sup(const PotentialField& u) {
  const auto& g = u.grid();
  const int nt = g.n_t();
  double s = 0.0;
  for (int k = 0; k <= nt; ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      double ut;
      if (k == 0) ut = (-3.0 * u.at(0, i) + 4.0 * u.at(1, i) - u.at(2, i)) / (2.0 * g.dt());
      else if (k == nt) ut = (3.0 * u.at(nt, i) - 4.0 * u.at(nt - 1, i) + u.at(nt - 2, i)) / (2.0 * g.dt());
      else ut = (u.at(k + 1, i) - u.at(k - 1, i)) / (2.0 * g.dt());
      const double ux = (u.at(k, g.neighbor_cell(i + 1)) - u.at(k, g.neighbor_cell(i - 1))) / (2.0 * g.dx());
      s = std::max({s, std::abs(ut), std::abs(ux)});
    }
  return s;
}

}  // namespace

DensityField m_from_u(const PotentialField& u, const ProblemSpec& spec, double tau) {
  check_grid(u, spec);
  const auto& g = spec.grid();
  const int nt = g.n_t();
  const double dt = g.dt();
  std::vector<double> m(u.values().size());
  for (int k = 0; k <= nt; ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      double ut;
      if (k == 0) ut = (-3.0 * u.at(0, i) + 4.0 * u.at(1, i) - u.at(2, i)) / (2.0 * dt);
      else if (k == nt) ut = (3.0 * u.at(nt, i) - 4.0 * u.at(nt - 1, i) + u.at(nt - 2, i)) / (2.0 * dt);
      else ut = (u.at(k + 1, i) - u.at(k - 1, i)) / (2.0 * dt);
      const double ux = (u.at(k, g.neighbor_cell(i + 1)) - u.at(k, g.neighbor_cell(i - 1))) / (2.0 * g.dx());
      m[g.node_cell_index(k, i)] =
          spec.coupling().phi(-ut + spec.hamiltonian().value(ux) - tau * spec.V()[i], tau);
    }
  return DensityField(g, std::move(m));
}

DualResidual assemble_residual(const PotentialField& u, const ProblemSpec& spec,
                               const DualParams& params) {
  require_dual_admissible(spec);
  check_grid(u, spec);
  const DualOperator op(spec, params);
  DualResidual res;
  op.eval(to_vec(u), res.rows, nullptr);
  const auto& g = spec.grid();
  if (!g.is_torus()) {
    // Reflected ghosts make the boundary-face difference vanish identically.
    const int nx = g.n_x();
    for (int k = 0; k <= g.n_t(); ++k) {
      res.lateral.push_back(spec.hamiltonian().eval((u.at(k, 0) - u.at(k, g.neighbor_cell(-1))) / g.dx()).Hp);
      res.lateral.push_back(
          spec.hamiltonian().eval((u.at(k, g.neighbor_cell(nx)) - u.at(k, nx - 1)) / g.dx()).Hp);
    }
  }
  return res;
}

SpMat assemble_jacobian(const PotentialField& u, const ProblemSpec& spec, const DualParams& params) {
  require_dual_admissible(spec);
  check_grid(u, spec);
  return DualOperator(spec, params).jacobian(to_vec(u));
}

PotentialField normalize_potential(const PotentialField& u, const ProblemSpec& spec) {
  check_grid(u, spec);
  const auto& g = spec.grid();
  double shift = 0.0;
  for (int i = 0; i < g.n_x(); ++i) shift += u.at(g.n_t(), i) * spec.m1()[i];
  shift *= g.dx();
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x -= shift;
  return PotentialField(g, std::move(v));
}

DualResult solve_dual(const ProblemSpec& spec, const ContinuationSchedule& schedule) {
  require_dual_admissible(spec);
  schedule.validate();
  const auto& g = spec.grid();

  std::vector<DualParams> stages;
  const double rho0 = schedule.rho_sequence.front();
  const double delta0 = schedule.delta_sequence.front();
  for (double tau : schedule.tau_sequence) stages.push_back({rho0, delta0, tau, schedule.picard});
  const std::size_t n = std::max(schedule.rho_sequence.size(), schedule.delta_sequence.size());
  for (std::size_t j = 1; j < n; ++j) {
    const double rho = schedule.rho_sequence[std::min(j, schedule.rho_sequence.size() - 1)];
    const double delta = schedule.delta_sequence[std::min(j, schedule.delta_sequence.size() - 1)];
    stages.push_back({rho, delta, 1.0, schedule.picard});
  }

  DualLog log;
  Vec u = Vec::Zero(static_cast<Eigen::Index>(g.num_time_nodes()) * g.n_x());
  Vec accepted = u;
  std::vector<bool> refined(stages.size(), false);
  bool ok = true;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const DualOperator op(spec, stages[s]);
    u = accepted;
    const NewtonOutcome out = newton(op, u, schedule);
    log.total_newton_iters += out.iterations;
    DualStageLog st;
    st.rho = stages[s].rho;
    st.delta = stages[s].delta;
    st.tau = stages[s].tau;
    st.newton_iters = out.iterations;
    st.residual = out.residual;
    st.converged = out.converged;
    st.sup_u = u.lpNorm<Eigen::Infinity>();
    st.sup_bound_rhs = op.boundary_data_sup();
    st.grad_sup = gradient_sup(to_field(g, u));
    log.stages.push_back(st);
    if (out.converged) {
      accepted = u;
      continue;
    }
    if (s == 0 || refined[s]) {
      ok = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "Newton stagnated at stage rho=%g delta=%g tau=%g (residual %.3e)",
                    st.rho, st.delta, st.tau, out.residual);
      log.message = buf;
      break;
    }
    // Roll back and insert the midpoint between the last accepted stage and this one.
    const DualParams& a = stages[s - 1];
    const DualParams& b = stages[s];
    DualParams mid{std::sqrt(a.rho * b.rho), std::sqrt(a.delta * b.delta), 0.5 * (a.tau + b.tau),
                   schedule.picard};
    stages.insert(stages.begin() + static_cast<std::ptrdiff_t>(s), mid);
    refined.insert(refined.begin() + static_cast<std::ptrdiff_t>(s), true);
    refined[s + 1] = true;
    ++log.refinements;
    --s;
  }

  log.converged = ok;
  log.final_residual = log.stages.empty() ? 0.0 : log.stages.back().residual;
  const PotentialField raw = to_field(g, ok ? u : accepted);
  PotentialField normalized = normalize_potential(raw, spec);
  DensityField m = m_from_u(normalized, spec, 1.0);
  return {std::move(normalized), raw, std::move(m), std::move(log)};
}

}  // namespace mfp
