#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mfp/error.hpp"
#include "mfp/estimates.hpp"
#include "mfp/geodesic.hpp"
#include "support.hpp"

using namespace mfp;

namespace {

PrimalConfig fast() {
  PrimalConfig c;
  c.sigma = 0.2;
  return c;
}

double moment(std::span<const double> m, const SpaceTimeGrid& g, int order, double about = 0.0) {
  double s = 0.0;
  for (int i = 0; i < g.n_x(); ++i) s += std::pow(g.cell_center(i) - about, order) * m[i] * g.dx();
  return s;
}

}  // namespace

TEST_CASE("geodesic oracle: identical marginals") {
  const auto spec = bench::transport(32);
  const auto& g = spec.grid();
  const auto o = geodesic_oracle_1d(spec.m0(), spec.m0(), g);
  for (int k = 0; k <= g.n_t(); ++k) CHECK(bench::sup_diff(o.slice(k), spec.m0()) <= 1e-10);
}

TEST_CASE("geodesic oracle: translation on the torus") {
  // compact support; with a positive floor the rigid rotation is not optimal
  SpaceTimeGrid g(1.0, 0.0, 1.0, 4, 64, Topology::Torus);
  const auto m0 = profiles::normalized(profiles::bump(g, 0.3, 0.15, 0.0), g.dx());
  const auto m1 = shift_cells(m0, 8);
  const auto o = geodesic_oracle_1d(m0, m1, g);
  for (int k = 0; k <= 4; ++k) CHECK(bench::sup_diff(o.slice(k), shift_cells(m0, 2 * k)) <= 1e-10);
}

TEST_CASE("geodesic oracle: Gaussian widths interpolate linearly") {
  SpaceTimeGrid g(1.0, -10.0, 10.0, 2, 2000);
  const auto m0 = profiles::normalized(profiles::gaussian(g, -1.0, 0.5), g.dx());
  const auto m1 = profiles::normalized(profiles::gaussian(g, 1.0, 1.5), g.dx());
  const auto o = geodesic_oracle_1d(m0, m1, g);
  const auto mid = o.slice(1);
  const double mean = moment(mid, g, 1);
  CHECK(mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(std::sqrt(moment(mid, g, 2, mean)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("geodesic oracle conserves mass and respects mirror symmetry") {
  const auto spec = bench::transport(40);
  const auto& g = spec.grid();
  const auto o = geodesic_oracle_1d(spec.m0(), spec.m1(), g);
  for (int k = 0; k <= g.n_t(); ++k) CHECK(std::abs(mass(o, k) - 1.0) <= 1e-10);
  CellProfile r0(spec.m1().rbegin(), spec.m1().rend()), r1(spec.m0().rbegin(), spec.m0().rend());
  const auto mirror = geodesic_oracle_1d(r0, r1, g);
  double err = 0.0;
  for (int k = 0; k <= g.n_t(); ++k)
    for (int i = 0; i < g.n_x(); ++i) err = std::max(err, std::abs(o.at(k, i) - mirror.at(g.n_t() - k, g.n_x() - 1 - i)));
  CHECK(err <= 1e-10);
}

TEST_CASE("test functions U") {
  const auto sq = UFamily::power(2.0);
  const auto cu = UFamily::power(3.0);
  const auto lin = UFamily::linear();
  for (double r : {0.1, 1.0, 2.5}) {
    CHECK(sq.P(r) == doctest::Approx(r * r));
    CHECK(sq.dP(r) == doctest::Approx(2 * r));
    CHECK(cu.P(r) == doctest::Approx(2 * r * r * r));
    CHECK(cu.dP(r) == doctest::Approx(6 * r * r));
    CHECK(lin.P(r) == 0.0);
  }
  const auto qa = UFamily::quadratic_above(1.0);
  CHECK(qa.U(0.5) == 0.0);
  CHECK(qa.U(3.0) == doctest::Approx(4.0));
  CHECK(qa.P(3.0) == doctest::Approx(2.0 * 2.0 * 3.0 - 4.0));
  CHECK_THROWS_AS(UFamily::power(1.5), ValidationError);
}

TEST_CASE("checks on the dual Gibbs solution") {
  const auto spec = bench::gibbs(24);
  const auto dual = solve_dual(spec);
  REQUIRE(dual.log.converged);

  const auto lin = displacement_profile(dual.m, dual.u, spec, UFamily::linear());
  CHECK(lin.violation <= 1e-7);
  const auto disp = check_displacement_convexity(dual.m, dual.u, spec, UFamily::power(2.0));
  CHECK(disp.pass);
  CHECK(disp.values.at("violation") <= 1e-10);

  const auto lp = lp_profile(dual.m, spec);
  CHECK(lp.K0[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(lp.K0.back() <= 1.0);
  CHECK(check_lp_bounds(dual.m, spec).pass);

  const auto energy = check_energy_identity(dual.u, dual.m, spec);
  CHECK(energy.pass);
  CHECK(energy.values.at("relative_gap") <= 1e-9);
  CHECK(check_ut_maximum_principle(dual.u, spec).pass);
  CHECK(check_sup_bound(dual.log).pass);
  CHECK(check_gradient_bound(dual.u).pass);
  CHECK(check_local_gradient_estimate(dual.u, dual.m, spec).pass);

  const auto primal = solve_primal(spec, fast());
  REQUIRE(primal.log.converged);
  CHECK(duality_gap(primal.state, dual.u, dual.m, spec) <= 1e-8);
}

TEST_CASE("uniform stationary instance has no gap") {
  const auto spec = bench::uniform_stationary(16, 1.0, Topology::Torus);
  const auto dual = solve_dual(spec);
  REQUIRE(dual.log.converged);
  const auto primal = solve_primal(spec, fast());
  REQUIRE(primal.log.converged);
  CHECK(duality_gap(primal.state, dual.u, dual.m, spec) <= 1e-10);
  CHECK(check_energy_identity(dual.u, dual.m, spec).values.at("relative_gap") <= 1e-10);
  CHECK(l1_space_time(primal.state.m, dual.m) <= 1e-8);
}

TEST_CASE("verify_dual is pure and deterministic") {
  const auto spec = bench::transport(16);
  const auto dual = solve_dual(spec);
  REQUIRE(dual.log.converged);
  const auto a = verify_dual(dual, spec, dual_check_names());
  const auto b = verify_dual(dual, spec, dual_check_names());
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t j = 0; j < a.checks.size(); ++j) {
    CHECK(a.checks[j].name == b.checks[j].name);
    CHECK(a.checks[j].pass == b.checks[j].pass);
    CHECK(a.checks[j].values == b.checks[j].values);
  }
  CHECK(a.constants == b.constants);
  const auto again = solve_dual(spec);
  CHECK(std::equal(dual.u.values().begin(), dual.u.values().end(), again.u.values().begin()));
  CHECK_THROWS_AS(verify_dual(dual, spec, {"nonsense"}), ValidationError);
  // f = 0 here, so the m upper bound is skipped only for non-convex V; V = 0 is convex
  CHECK(a.find("local_gradient_estimate") != nullptr);
}

TEST_CASE("recovery of the dual density") {
  const auto spec = bench::congestion(16);
  const auto dual = solve_dual(spec);
  REQUIRE(dual.log.converged);
  CHECK(bench::sup_diff(m_from_u(dual.u, spec).values(), dual.m.values()) <= 1e-12);
  const auto rep = verify_dual(dual, spec, {"recovery_consistency"});
  CHECK(rep.all_pass());
}

TEST_CASE("epsilon sweep with equal marginals") {
  SpaceTimeGrid g(1.0, 0.0, 1.0, 12, 12, Topology::Torus);
  const auto m = profiles::bump(g, 0.5, 0.3, 0.2);
  const ProblemSpec templ(g, m, m, CellProfile(12, 0.0), HamiltonianSpec::quadratic(), CouplingSpec::zero(0.1));
  const auto rep = eps_sweep(templ, {0.2, 0.1, 0.0}, fast(), 3 * g.dx());
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.converged);
  CHECK(rep.monotone);
  CHECK(rep.pass);
  // with eps > 0 the plan spreads toward the Gibbs state; only eps = 0 is static
  CHECK(rep.entries.back().epsilon == 0.0);
  CHECK(rep.entries.back().error <= 1e-4);
  CHECK(rep.entries.front().error > rep.entries.back().error);

  CHECK_THROWS_AS(eps_sweep(bench::congestion(8), {0.1}, fast()), ValidationError);
  CHECK_THROWS_AS(eps_sweep(templ, {}, fast()), ValidationError);
}

TEST_CASE("refinement protocols") {
  DisplacementProfile coarse, fine;
  coarse.violation = 0.02;
  fine.violation = 0.01;
  CHECK(displacement_refinement(coarse, fine).pass);
  fine.violation = 0.015;
  CHECK_FALSE(displacement_refinement(coarse, fine).pass);
  fine.violation = 0.0;
  CHECK(displacement_refinement(coarse, fine).pass);

  LpProfile a, b;
  a.p_values = b.p_values = {1.0, 2.0};
  a.K0 = {1.0 / 3, 0.40};
  b.K0 = {1.0 / 3, 0.44};
  a.K1 = b.K1 = {1.0, 1.0};
  CHECK(lp_refinement({a, b}).pass);
  b.K0[1] = 0.55;
  CHECK_FALSE(lp_refinement({a, b}).pass);
}
