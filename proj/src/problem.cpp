#include "mfp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfp/error.hpp"

namespace mfp {
namespace {

double normalize(CellProfile& profile, const SpaceTimeGrid& grid, const char* key) {
  if (profile.size() != static_cast<std::size_t>(grid.n_x()))
    throw ValidationError(key, "expected " + std::to_string(grid.n_x()) + " cell values, got " +
                                   std::to_string(profile.size()));
  for (double v : profile)
    if (!std::isfinite(v)) throw ValidationError(key, "non-finite density value");
  const double total = mass(profile, grid.dx());
  if (!(total > 0.0)) throw ValidationError(key, "density has non-positive total mass");
  for (double& v : profile) v /= total;
  return total;
}

}  // namespace

ProblemSpec::ProblemSpec(SpaceTimeGrid grid, CellProfile m0, CellProfile m1, CellProfile V,
                         HamiltonianSpec hamiltonian, CouplingSpec coupling)
    : grid_(grid),
      m0_(std::move(m0)),
      m1_(std::move(m1)),
      V_(std::move(V)),
      hamiltonian_(hamiltonian),
      coupling_(coupling) {
  raw_mass_m0_ = normalize(m0_, grid_, "m0");
  raw_mass_m1_ = normalize(m1_, grid_, "m1");
  if (V_.size() != static_cast<std::size_t>(grid_.n_x()))
    throw ValidationError("potential", "expected " + std::to_string(grid_.n_x()) + " values");
  for (double v : V_)
    if (!std::isfinite(v)) throw ValidationError("potential", "non-finite value");
  dV_ = cell_derivative(V_, grid_);
  lipschitz_V_ = discrete_lipschitz(V_, grid_);
}

ProblemSpec ProblemSpec::with_coupling(const CouplingSpec& coupling) const {
  ProblemSpec out = *this;
  out.coupling_ = coupling;
  return out;
}

ProblemSpec ProblemSpec::with_grid_data(const SpaceTimeGrid& grid, CellProfile m0,
                                        CellProfile m1, CellProfile V) const {
  return ProblemSpec(grid, std::move(m0), std::move(m1), std::move(V), hamiltonian_, coupling_);
}

ProblemSpec ProblemSpec::time_reversed() const {
  ProblemSpec out = *this;
  std::swap(out.m0_, out.m1_);
  std::swap(out.raw_mass_m0_, out.raw_mass_m1_);
  return out;
}

double discrete_lipschitz(const CellProfile& profile, const SpaceTimeGrid& grid) {
  const int n = static_cast<int>(profile.size());
  double lip = 0.0;
  const int last = grid.is_torus() ? n : n - 1;
  for (int i = 0; i < last; ++i) {
    const double d = std::abs(profile[(i + 1) % n] - profile[i]);
    if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
    lip = std::max(lip, d);
  }
  return lip / grid.dx();
}

CellProfile cell_derivative(const CellProfile& p, const SpaceTimeGrid& grid) {
  const int n = static_cast<int>(p.size());
  const double h = grid.dx();
  CellProfile d(p.size());
  for (int i = 0; i < n; ++i) {
    if (grid.is_torus()) {
      d[i] = (p[(i + 1) % n] - p[(i - 1 + n) % n]) / (2.0 * h);
    } else if (i == 0) {
      d[i] = n >= 3 ? (-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * h) : (p[1] - p[0]) / h;
    } else if (i == n - 1) {
      d[i] = n >= 3 ? (3.0 * p[n - 1] - 4.0 * p[n - 2] + p[n - 3]) / (2.0 * h)
                    : (p[n - 1] - p[n - 2]) / h;
    } else {
      d[i] = (p[i + 1] - p[i - 1]) / (2.0 * h);
    }
  }
  return d;
}

ValidationReport validate_problem(const ProblemSpec& spec) {
  ValidationReport r;
  const auto& grid = spec.grid();
  r.mass_defect_m0 = std::abs(spec.raw_mass_m0() - 1.0);
  r.mass_defect_m1 = std::abs(spec.raw_mass_m1() - 1.0);
  const auto [lo0, hi0] = std::minmax_element(spec.m0().begin(), spec.m0().end());
  const auto [lo1, hi1] = std::minmax_element(spec.m1().begin(), spec.m1().end());
  (void)hi0;
  (void)hi1;
  r.min_density = std::min(*lo0, *lo1);
  r.lipschitz_V = spec.lipschitz_V();

  auto log_profile = [](const CellProfile& m) {
    CellProfile out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      out[i] = m[i] > 0.0 ? std::log(m[i]) : -std::numeric_limits<double>::infinity();
    return out;
  };
  if (r.min_density > 0.0) {
    r.lipschitz_log_m0 = discrete_lipschitz(log_profile(spec.m0()), grid);
    r.lipschitz_log_m1 = discrete_lipschitz(log_profile(spec.m1()), grid);
  } else {
    r.lipschitz_log_m0 = r.lipschitz_log_m1 = std::numeric_limits<double>::infinity();
    r.reasons.emplace_back("positivity");
  }
  const double post0 = mass(spec.m0(), grid.dx());
  const double post1 = mass(spec.m1(), grid.dx());
  if (std::abs(post0 - 1.0) > 1e-12 || std::abs(post1 - 1.0) > 1e-12)
    r.reasons.emplace_back("mass");
  r.admissible = r.reasons.empty();
  return r;
}

}  // namespace mfp
