#include "mfp/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfp/error.hpp"
#include "mfp/geodesic.hpp"

namespace mfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ux_node(const PotentialField& u, int k, int i) {
  const auto& g = u.grid();
  return (u.at(k, g.neighbor_cell(i + 1)) - u.at(k, g.neighbor_cell(i - 1))) / (2.0 * g.dx());
}

double ut_node(const PotentialField& u, int k, int i) {
  const auto& g = u.grid();
  const int nt = g.n_t();
  const double dt = g.dt();
  if (k == 0) return (-3.0 * u.at(0, i) + 4.0 * u.at(1, i) - u.at(2, i)) / (2.0 * dt);
  if (k == nt) return (3.0 * u.at(nt, i) - 4.0 * u.at(nt - 1, i) + u.at(nt - 2, i)) / (2.0 * dt);
  return (u.at(k + 1, i) - u.at(k - 1, i)) / (2.0 * dt);
}

// Interior faces as (face, left cell, right cell).
struct Face {
  int j, left, right;
};

std::vector<Face> interior_faces(const SpaceTimeGrid& g) {
  std::vector<Face> out;
  const int nx = g.n_x();
  if (g.is_torus()) {
    for (int j = 0; j < nx; ++j) out.push_back({j, (j - 1 + nx) % nx, j});
  } else {
    for (int j = 1; j < nx; ++j) out.push_back({j, j - 1, j});
  }
  return out;
}

double trapezoid_weight(int k, int nt) { return (k == 0 || k == nt) ? 0.5 : 1.0; }

void check_same_grid(const SpaceTimeGrid& a, const SpaceTimeGrid& b) {
  if (a != b) throw ValidationError("field", "grid mismatch");
}

}  // namespace

bool EstimateReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.skipped || c.pass; });
}

const CheckResult* EstimateReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

UFamily UFamily::power(double p) {
  if (!(p >= 2.0)) throw ValidationError("U.p", "power family needs p >= 2");
  UFamily u;
  u.kind = Kind::Power;
  u.p = p;
  return u;
}

UFamily UFamily::quadratic_above(double level) {
  if (!(level >= 0.0)) throw ValidationError("U.level", "must be >= 0");
  UFamily u;
  u.kind = Kind::QuadraticAboveLevel;
  u.level = level;
  return u;
}

UFamily UFamily::linear() {
  UFamily u;
  u.kind = Kind::Linear;
  return u;
}

double UFamily::U(double r) const {
  switch (kind) {
    case Kind::Power: return std::pow(r, p);
    case Kind::QuadraticAboveLevel: {
      const double s = std::max(0.0, r - level);
      return s * s;
    }
    case Kind::Linear: return r;
  }
  return 0.0;
}

double UFamily::P(double r) const {
  switch (kind) {
    case Kind::Power: return (p - 1.0) * std::pow(r, p);
    case Kind::QuadraticAboveLevel: {
      const double s = std::max(0.0, r - level);
      return s * (r + level);
    }
    case Kind::Linear: return 0.0;
  }
  return 0.0;
}

double UFamily::dP(double r) const {
  switch (kind) {
    case Kind::Power: return p * (p - 1.0) * std::pow(r, p - 1.0);
    case Kind::QuadraticAboveLevel: return r > level ? 2.0 * r : 0.0;
    case Kind::Linear: return 0.0;
  }
  return 0.0;
}

DisplacementProfile displacement_profile(const DensityField& m, const PotentialField& u,
                                         const ProblemSpec& spec, const UFamily& family) {
  const auto& g = spec.grid();
  check_same_grid(m.grid(), g);
  check_same_grid(u.grid(), g);
  const int nt = g.n_t();
  const int nx = g.n_x();
  const double dx = g.dx();
  const double dt = g.dt();
  const double eps = spec.epsilon();
  const auto& H = spec.hamiltonian();
  const auto& C = spec.coupling();
  const auto faces = interior_faces(g);

  std::vector<double> S(nt + 1, 0.0);
  for (int k = 0; k <= nt; ++k)
    for (int i = 0; i < nx; ++i) S[k] += family.U(m.at(k, i)) * dx;

  DisplacementProfile out;
  std::vector<double> hp_face(g.num_faces());
  for (int k = 1; k < nt; ++k) {
    const double lhs = (S[k + 1] - 2.0 * S[k] + S[k - 1]) / (dt * dt);
    std::fill(hp_face.begin(), hp_face.end(), 0.0);
    double rhs = 0.0;
    for (const Face& f : faces) {
      const double ux = (u.at(k, f.right) - u.at(k, f.left)) / dx;
      const auto h = H.eval(ux);
      hp_face[f.j] = h.Hp;
      const double mf = 0.5 * (m.at(k, f.left) + m.at(k, f.right));
      const double mx = (m.at(k, f.right) - m.at(k, f.left)) / dx;
      const double Vx = (spec.V()[f.right] - spec.V()[f.left]) / dx;
      const double stiff = C.df(mf) + (eps > 0.0 ? eps / mf : 0.0);
      rhs += family.dP(mf) * h.Hpp * (stiff * mx * mx + mx * Vx) * dx;
    }
    for (int i = 0; i < nx; ++i) {
      const double div = (hp_face[g.right_face(i)] - hp_face[g.left_face(i)]) / dx;
      const double mi = m.at(k, i);
      rhs += family.dP(mi) * mi * div * div * dx;
    }
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.violation = std::max(out.violation, std::max(0.0, rhs - lhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
  }
  return out;
}

CheckResult check_displacement_convexity(const DensityField& m, const PotentialField& u,
                                         const ProblemSpec& spec, const UFamily& family,
                                         double tol_disc) {
  CheckResult r;
  r.name = "displacement_convexity";
  r.formula =
      "D2_t sum U(m) dx >= sum P'(m) m [(H_p(u_x))_x]^2 dx + sum_faces P'(m) [(f'(m)+eps/m) H_pp m_x^2 + "
      "H_pp m_x V_x] dx, violation per node normalized by 1 + |LHS| + |RHS|";
  if (!spec.hamiltonian().quadratic_growth()) {
    r.skipped = true;
    r.reason = "Hamiltonian without quadratic growth";
    return r;
  }
  const auto& g = spec.grid();
  const DisplacementProfile prof = displacement_profile(m, u, spec, family);
  r.tolerance = tol_disc >= 0.0 ? tol_disc : (g.dt() + g.dx());
  double margin = kInf;
  for (std::size_t k = 0; k < prof.lhs.size(); ++k) margin = std::min(margin, prof.lhs[k] - prof.rhs[k]);
  r.lhs = prof.violation;
  r.rhs = r.tolerance;
  r.values["min_lhs_minus_rhs"] = margin;
  r.values["violation"] = prof.violation;
  r.pass = prof.violation <= r.tolerance;
  return r;
}

CheckResult displacement_refinement(const DisplacementProfile& coarse, const DisplacementProfile& fine,
                                    double ratio) {
  CheckResult r;
  r.name = "displacement_convexity_refinement";
  r.formula = "violation(fine) == 0 or violation(fine) <= ratio * violation(coarse)";
  r.lhs = fine.violation;
  r.rhs = ratio * coarse.violation;
  r.tolerance = ratio;
  r.values["violation_coarse"] = coarse.violation;
  r.values["violation_fine"] = fine.violation;
  r.pass = fine.violation == 0.0 || fine.violation <= r.rhs;
  return r;
}

double lp_norm(std::span<const double> profile, double dx, double p) {
  if (std::isinf(p)) {
    double s = 0.0;
    for (double v : profile) s = std::max(s, std::abs(v));
    return s;
  }
  double s = 0.0;
  for (double v : profile) s += std::pow(std::abs(v), p) * dx;
  return std::pow(s, 1.0 / p);
}

LpProfile lp_profile(const DensityField& m, const ProblemSpec& spec, double q) {
  const auto& g = spec.grid();
  check_same_grid(m.grid(), g);
  LpProfile out;
  out.q = q;
  out.p_values = {1.0, 2.0, 4.0, kInf};
  const double dx = g.dx();
  const int nt = g.n_t();
  for (double p : out.p_values) {
    const double denom = lp_norm(spec.m0(), dx, p) + lp_norm(spec.m1(), dx, p) + 1.0;
    double k0 = 0.0, k1 = 0.0;
    for (int k = 0; k <= nt; ++k) {
      const double norm = lp_norm(m.slice(k), dx, p);
      k0 = std::max(k0, norm / denom);
      if (k > 0 && k < nt) {
        const double t = g.time(k);
        k1 = std::max(k1, norm / (std::pow(t, -q) + std::pow(g.T() - t, -q)));
      }
    }
    out.K0.push_back(k0);
    out.K1.push_back(k1);
  }
  return out;
}

CheckResult check_lp_bounds(const DensityField& m, const ProblemSpec& spec) {
  CheckResult r;
  r.name = "lp_bounds";
  r.formula =
      "K0_p = sup_t ||m(t)||_p / (||m0||_p + ||m1||_p + 1), K1_p = max_interior ||m(t)||_p / (t^-q + (T-t)^-q), q = 1";
  const auto& g = spec.grid();
  const LpProfile prof = lp_profile(m, spec);
  const bool hypothesis = spec.coupling().growth_hypothesis().has_value();
  const char* names[] = {"1", "2", "4", "inf"};
  bool ok = true;
  for (std::size_t j = 0; j < prof.p_values.size(); ++j) {
    if (j > 0 && !hypothesis) continue;
    r.values[std::string("K0_p") + names[j]] = prof.K0[j];
    r.values[std::string("K1_p") + names[j]] = prof.K1[j];
    ok = ok && std::isfinite(prof.K0[j]) && std::isfinite(prof.K1[j]) && prof.K1[j] > 0.0;
  }
  // p = 1: the ratio is 1/3 for exact mass conservation.
  r.lhs = prof.K0[0];
  r.rhs = 1.0 / 3.0;
  r.tolerance = 10.0 * (g.dt() + g.dx()) / 3.0;
  ok = ok && prof.K0[0] <= r.rhs + r.tolerance;
  if (!hypothesis) r.reason = "growth hypothesis on f absent: only p = 1 checked";
  r.pass = ok;
  return r;
}

CheckResult lp_refinement(const std::vector<LpProfile>& studies, double tol) {
  CheckResult r;
  r.name = "lp_refinement";
  r.formula = "max_p (max K0_p - min K0_p) / min K0_p over the refinement study <= tol";
  r.tolerance = tol;
  if (studies.size() < 2) {
    r.skipped = true;
    r.reason = "needs at least two grids";
    return r;
  }
  const char* names[] = {"1", "2", "4", "inf"};
  double spread = 0.0;
  for (std::size_t j = 0; j < studies.front().K0.size(); ++j) {
    double lo = kInf, hi = 0.0;
    for (const auto& s : studies) {
      lo = std::min(lo, s.K0[j]);
      hi = std::max(hi, s.K0[j]);
    }
    const double rel = (hi - lo) / lo;
    r.values[std::string("spread_p") + names[j]] = rel;
    spread = std::max(spread, rel);
  }
  r.lhs = spread;
  r.rhs = tol;
  r.pass = std::isfinite(spread) && spread <= tol;
  return r;
}

CheckResult check_local_gradient_estimate(const PotentialField& u, const DensityField& m,
                                          const ProblemSpec& spec) {
  CheckResult r;
  r.name = "local_gradient_estimate";
  r.formula = "Pi(t) = max_x theta H(u_x) + eps log m <= L (t^-2 + (T-t)^-2) + L0, L0 = min_t Pi, L fitted";
  if (spec.coupling().family() != CouplingFamily::Zero && spec.coupling().c() != 0.0) {
    r.skipped = true;
    r.reason = "requires f = 0";
    return r;
  }
  const auto& g = spec.grid();
  check_same_grid(u.grid(), g);
  check_same_grid(m.grid(), g);
  const auto [theta, c_theta] = spec.hamiltonian().theta_constants();
  const double eps = spec.epsilon();
  std::vector<double> profile;
  for (int k = 1; k < g.n_t(); ++k) {
    double best = -kInf;
    for (int i = 0; i < g.n_x(); ++i)
      best = std::max(best, theta * spec.hamiltonian().value(ux_node(u, k, i)) + eps * std::log(m.at(k, i)));
    profile.push_back(best);
  }
  const double L0 = *std::min_element(profile.begin(), profile.end());
  double L = 0.0;
  for (int k = 1; k < g.n_t(); ++k) {
    const double t = g.time(k);
    const double barrier = 1.0 / (t * t) + 1.0 / ((g.T() - t) * (g.T() - t));
    L = std::max(L, (profile[k - 1] - L0) / barrier);
  }
  r.values["theta"] = theta;
  r.values["theta_c"] = c_theta;
  r.values["L"] = L;
  r.values["L0"] = L0;
  r.values["max_profile"] = *std::max_element(profile.begin(), profile.end());
  r.lhs = L;
  r.rhs = kInf;
  r.pass = std::isfinite(L) && std::isfinite(L0);
  return r;
}

CheckResult check_energy_identity(const PotentialField& u, const DensityField& m,
                                  const ProblemSpec& spec) {
  CheckResult r;
  r.name = "energy_identity";
  r.formula =
      "sum u(T) m(T) dx - sum u(0) m(0) dx = -sum_trap m (H_p(u_x) u_x - H(u_x)) dt dx - sum_trap "
      "(f_eps(m) + V) m dt dx";
  const auto& g = spec.grid();
  check_same_grid(u.grid(), g);
  check_same_grid(m.grid(), g);
  const int nt = g.n_t();
  const double dx = g.dx();
  const double dt = g.dt();
  double lhs = 0.0;
  for (int i = 0; i < g.n_x(); ++i) lhs += (u.at(nt, i) * m.at(nt, i) - u.at(0, i) * m.at(0, i)) * dx;
  double rhs = 0.0;
  for (int k = 0; k <= nt; ++k) {
    double row = 0.0;
    for (int i = 0; i < g.n_x(); ++i) {
      const double mi = m.at(k, i);
      const auto h = spec.hamiltonian().eval(ux_node(u, k, i));
      row += mi * (h.Hp * ux_node(u, k, i) - h.H) + (spec.coupling().f_eps(mi) + spec.V()[i]) * mi;
    }
    rhs -= trapezoid_weight(k, nt) * row * dt * dx;
  }
  const double gap = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = 10.0 * (dt + dx);
  r.values["relative_gap"] = gap;
  r.pass = gap <= r.tolerance;
  return r;
}

CheckResult check_ut_maximum_principle(const PotentialField& u, const ProblemSpec& spec) {
  CheckResult r;
  r.name = "ut_maximum_principle";
  r.formula = "max_interior |D_t u| <= max_{t=0,T} |D_t u| + 10 (dt + dx)";
  const auto& g = spec.grid();
  check_same_grid(u.grid(), g);
  double inner = 0.0, outer = 0.0;
  for (int k = 0; k <= g.n_t(); ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      const double v = std::abs(ut_node(u, k, i));
      if (k == 0 || k == g.n_t()) outer = std::max(outer, v);
      else inner = std::max(inner, v);
    }
  r.lhs = inner;
  r.rhs = outer;
  r.tolerance = 10.0 * (g.dt() + g.dx());
  r.pass = inner <= outer + r.tolerance;
  return r;
}

CheckResult check_sup_bound(const DualLog& log) {
  CheckResult r;
  r.name = "sup_bound";
  r.formula = "delta ||u||_inf <= ||data_0||_inf + ||data_T||_inf at every continuation stage";
  bool ok = !log.stages.empty();
  double worst = -kInf;
  for (const auto& s : log.stages) {
    if (!s.converged) continue;
    const double excess = s.delta * s.sup_u - s.sup_bound_rhs;
    if (excess > worst) {
      worst = excess;
      r.lhs = s.delta * s.sup_u;
      r.rhs = s.sup_bound_rhs;
    }
    ok = ok && s.delta * s.sup_u <= s.sup_bound_rhs * (1.0 + 1e-9) + 1e-12;
  }
  r.pass = ok;
  return r;
}

CheckResult check_gradient_bound(const PotentialField& u) {
  CheckResult r;
  r.name = "gradient_bound";
  r.formula = "C = ||(D_t u, D_x u)||_inf / (1 + ||u||_inf)";
  const auto& g = u.grid();
  double grad = 0.0, sup = 0.0;
  for (int k = 0; k <= g.n_t(); ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      grad = std::max({grad, std::abs(ut_node(u, k, i)), std::abs(ux_node(u, k, i))});
      sup = std::max(sup, std::abs(u.at(k, i)));
    }
  r.lhs = grad;
  r.rhs = 1.0 + sup;
  r.values["C"] = grad / (1.0 + sup);
  r.pass = std::isfinite(grad) && std::isfinite(sup);
  return r;
}

CheckResult check_m_upper_bound(const PotentialField& u, const ProblemSpec& spec) {
  CheckResult r;
  r.name = "m_upper_bound";
  r.formula = "max_interior (-u_t + H(u_x)) <= max(gamma1, max_{t=0,T} (-u_t + H(u_x))) + 10 (dt + dx)";
  const auto& g = spec.grid();
  check_same_grid(u.grid(), g);
  const auto& V = spec.V();
  bool convex = !g.is_torus();
  if (g.is_torus()) {
    convex = std::all_of(V.begin(), V.end(), [&](double v) { return v == V.front(); });
  } else {
    for (int i = 1; i + 1 < g.n_x(); ++i)
      convex = convex && V[i + 1] - 2.0 * V[i] + V[i - 1] >= -1e-12 * (1.0 + std::abs(V[i]));
  }
  if (!convex || !spec.coupling().mf_prime_nondecreasing()) {
    r.skipped = true;
    r.reason = !convex ? "V not convex" : "m f'(m) not nondecreasing";
    return r;
  }
  double inner = -kInf, outer = -kInf;
  for (int k = 0; k <= g.n_t(); ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      const double w = -ut_node(u, k, i) + spec.hamiltonian().value(ux_node(u, k, i));
      if (k == 0 || k == g.n_t()) outer = std::max(outer, w);
      else inner = std::max(inner, w);
    }
  const double gamma1 = spec.hamiltonian().coercivity_constants().second;
  r.lhs = inner;
  r.rhs = std::max(gamma1, outer);
  r.tolerance = 10.0 * (g.dt() + g.dx());
  r.values["gamma1"] = gamma1;
  r.pass = inner <= r.rhs + r.tolerance;
  return r;
}

PrimalState primal_from_dual(const PotentialField& u, const DensityField& m, const ProblemSpec& spec) {
  const auto& g = spec.grid();
  check_same_grid(u.grid(), g);
  check_same_grid(m.grid(), g);
  std::vector<double> w(static_cast<std::size_t>(g.n_t()) * g.num_faces(), 0.0);
  const double dx = g.dx();
  for (int k = 0; k < g.n_t(); ++k)
    for (const Face& f : interior_faces(g)) {
      const double ux = 0.5 * ((u.at(k, f.right) - u.at(k, f.left)) + (u.at(k + 1, f.right) - u.at(k + 1, f.left))) / dx;
      const double mf = 0.25 * (m.at(k, f.left) + m.at(k, f.right) + m.at(k + 1, f.left) + m.at(k + 1, f.right));
      w[g.cell_face_index(k, f.j)] = mf * spec.hamiltonian().eval(ux).Hp;
    }
  return {m, MomentumField(g, std::move(w))};
}

double duality_gap(const PrimalState& primal, const PotentialField& u, const DensityField& m,
                   const ProblemSpec& spec) {
  check_same_grid(primal.m.grid(), spec.grid());
  const double jp = functional_value(primal, spec);
  const double jd = functional_value(primal_from_dual(u, m, spec), spec);
  return std::abs(jp - jd) / (1.0 + std::abs(jp));
}

double l1_space_time(const DensityField& a, const DensityField& b) {
  check_same_grid(a.grid(), b.grid());
  const auto& g = a.grid();
  double s = 0.0;
  for (int k = 0; k <= g.n_t(); ++k) {
    double row = 0.0;
    for (int i = 0; i < g.n_x(); ++i) row += std::abs(a.at(k, i) - b.at(k, i));
    s += trapezoid_weight(k, g.n_t()) * row;
  }
  return s * g.dt() * g.dx();
}

SweepReport eps_sweep(const ProblemSpec& templ, const std::vector<double>& eps_list,
                      const PrimalConfig& cfg, double floor) {
  if (templ.coupling().family() != CouplingFamily::Zero)
    throw ValidationError("coupling.f_family", "the epsilon sweep needs f = 0");
  if (eps_list.empty()) throw ValidationError("sweep.eps_list", "must not be empty");
  const DensityField oracle = geodesic_oracle_1d(templ.m0(), templ.m1(), templ.grid());
  SweepReport rep;
  rep.converged = true;
  for (double eps : eps_list) {
    if (!(eps >= 0.0)) throw ValidationError("sweep.eps_list", "entries must be >= 0");
    const ProblemSpec spec = templ.with_coupling(templ.coupling().with_epsilon(eps));
    const PrimalResult res = solve_primal(spec, cfg);
    rep.entries.push_back({eps, max_l1_distance(res.state.m, oracle), res.log.converged, res.log.iterations});
    rep.converged = rep.converged && res.log.converged;
  }
  std::vector<SweepEntry> sorted = rep.entries;
  std::sort(sorted.begin(), sorted.end(), [](const SweepEntry& a, const SweepEntry& b) { return a.epsilon > b.epsilon; });
  rep.monotone = true;
  for (std::size_t j = 1; j < sorted.size(); ++j)
    if (sorted[j].error > sorted[j - 1].error && sorted[j].error > floor) rep.monotone = false;
  rep.pass = rep.monotone && rep.converged;
  return rep;
}

const std::vector<std::string>& dual_check_names() {
  static const std::vector<std::string> names = {
      "recovery_consistency", "displacement_convexity", "lp_bounds",      "local_gradient_estimate",
      "energy_identity",      "ut_maximum_principle",   "sup_bound",      "gradient_bound",
      "m_upper_bound"};
  return names;
}

EstimateReport verify_dual(const DualResult& dual, const ProblemSpec& spec,
                           const std::vector<std::string>& names) {
  EstimateReport rep;
  const auto [g0, g1] = spec.hamiltonian().coercivity_constants();
  rep.constants["gamma0"] = g0;
  rep.constants["gamma1"] = g1;
  if (const auto h = spec.coupling().growth_hypothesis()) {
    rep.constants["c0"] = h->first;
    rep.constants["r0"] = h->second;
  }
  for (const auto& name : names) {
    const auto& known = dual_check_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ValidationError("checks", "unknown check '" + name + "'");
    CheckResult r;
    if (name == "recovery_consistency") {
      r.name = name;
      r.formula = "max |m_from_u(u_hat) - m_dual|";
      const DensityField rec = m_from_u(dual.u, spec);
      double d = 0.0;
      for (std::size_t i = 0; i < rec.values().size(); ++i)
        d = std::max(d, std::abs(rec.values()[i] - dual.m.values()[i]));
      r.lhs = d;
      r.pass = d == 0.0;
    } else if (name == "displacement_convexity") {
      r = check_displacement_convexity(dual.m, dual.u, spec, UFamily::power(2.0));
    } else if (name == "lp_bounds") {
      r = check_lp_bounds(dual.m, spec);
      for (const auto& [k, v] : r.values) rep.constants[k] = v;
    } else if (name == "local_gradient_estimate") {
      r = check_local_gradient_estimate(dual.u, dual.m, spec);
      if (!r.skipped) {
        rep.constants["theta"] = r.values["theta"];
        rep.constants["L"] = r.values["L"];
        rep.constants["L0"] = r.values["L0"];
      }
    } else if (name == "energy_identity") {
      r = check_energy_identity(dual.u, dual.m, spec);
    } else if (name == "ut_maximum_principle") {
      r = check_ut_maximum_principle(dual.u, spec);
    } else if (name == "sup_bound") {
      r = check_sup_bound(dual.log);
    } else if (name == "gradient_bound") {
      r = check_gradient_bound(dual.u);
      rep.constants["gradient_C"] = r.values["C"];
    } else if (name == "m_upper_bound") {
      r = check_m_upper_bound(dual.u, spec);
    }
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

}  // namespace mfp
