#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mfp/error.hpp"
#include "mfp/primal_solver.hpp"
#include "support.hpp"

using namespace mfp;

namespace {

PrimalConfig fast() {
  PrimalConfig c;
  c.sigma = 0.2;
  return c;
}

CellProfile reversed(CellProfile p) {
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

TEST_CASE("Gibbs state is a fixed point") {
  const auto spec = bench::gibbs(32);
  const auto r = solve_primal(spec, fast());
  REQUIRE(r.log.converged);
  const auto& g = spec.grid();
  double err = 0.0;
  for (int k = 0; k < g.num_time_nodes(); ++k)
    for (int i = 0; i < g.num_cells(); ++i) err = std::max(err, std::abs(r.state.m.at(k, i) - spec.m0()[i]));
  CHECK(err <= 1e-5);
  for (double w : r.state.w.values()) CHECK(std::abs(w) <= 1e-5);
}

TEST_CASE("uniform stationary state") {
  for (auto topo : {Topology::IntervalNeumann, Topology::Torus}) {
    const auto spec = bench::uniform_stationary(16, 1.0, topo);
    const auto r = solve_primal(spec, fast());
    REQUIRE(r.log.converged);
    for (double m : r.state.m.values()) CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.log.final_value == doctest::Approx(-1.0).epsilon(1e-8));
  }
}

TEST_CASE("optimum beats the straight line and conserves mass") {
  for (const auto& spec : {bench::transport(24), bench::congestion(24)}) {
    const auto r = solve_primal(spec, fast());
    REQUIRE(r.log.converged);
    CHECK(r.log.final_value <= functional_value(linear_interpolation_state(spec), spec) + 1e-10);
    for (int k = 0; k < spec.grid().num_time_nodes(); ++k)
      CHECK(std::abs(mass(r.state.m, k) - 1.0) <= 1e-8);
    CHECK(r.state.m.min_value() > 0.0);
    CHECK(feasibility_defect(r.state, spec) <= fast().tol_mass);
  }
}

TEST_CASE("mirror symmetry") {
  const auto spec = bench::transport(24);
  const auto& g = spec.grid();
  const auto mirror = spec.with_grid_data(g, reversed(spec.m0()), reversed(spec.m1()), reversed(spec.V()));
  const auto a = solve_primal(spec, fast());
  const auto b = solve_primal(mirror, fast());
  double err = 0.0;
  for (int k = 0; k < g.num_time_nodes(); ++k)
    for (int i = 0; i < g.num_cells(); ++i)
      err = std::max(err, std::abs(a.state.m.at(k, i) - b.state.m.at(k, g.n_x() - 1 - i)));
  CHECK(err <= 1e-4);
  CHECK(a.log.final_value == doctest::Approx(b.log.final_value).epsilon(1e-6));
}

TEST_CASE("time reversal") {
  const auto spec = bench::transport(24);
  const auto& g = spec.grid();
  const auto a = solve_primal(spec, fast());
  const auto b = solve_primal(spec.time_reversed(), fast());
  double err = 0.0;
  for (int k = 0; k < g.num_time_nodes(); ++k)
    for (int i = 0; i < g.num_cells(); ++i)
      err = std::max(err, std::abs(a.state.m.at(k, i) - b.state.m.at(g.n_t() - k, i)));
  CHECK(err <= 1e-4);
  CHECK(a.log.final_value == doctest::Approx(b.log.final_value).epsilon(1e-6));
}

TEST_CASE("iteration cap returns the best iterate unconverged") {
  auto c = fast();
  c.max_iters = 3;
  const auto r = solve_primal(bench::transport(12), c);
  CHECK_FALSE(r.log.converged);
  CHECK(r.log.iterations == 3);
  CHECK(std::isfinite(r.log.final_value));
}

TEST_CASE("primal config validation names keys") {
  auto key = [](PrimalConfig c) {
    try {
      c.validate();
    } catch (const ValidationError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  PrimalConfig c;
  CHECK(key(c) == "<none>");
  c.sigma = 0.0;
  CHECK(key(c) == "primal.sigma");
  c = {};
  c.theta = 2.0;
  CHECK(key(c) == "primal.theta");
  c = {};
  c.tol_kkt = -1.0;
  CHECK(key(c) == "primal.tol_kkt");
  c = {};
  c.max_iters = 0;
  CHECK(key(c) == "primal.max_iters");
}
