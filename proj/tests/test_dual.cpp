#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mfp/dual_solver.hpp"
#include "mfp/error.hpp"
#include "support.hpp"

using namespace mfp;

namespace {

PotentialField from_function(const SpaceTimeGrid& g, auto f) {
  std::vector<double> v(static_cast<std::size_t>(g.num_time_nodes() * g.num_cells()));
  for (int k = 0; k < g.num_time_nodes(); ++k)
    for (int i = 0; i < g.num_cells(); ++i) v[g.node_cell_index(k, i)] = f(g.time(k), g.cell_center(i));
  return PotentialField(g, v);
}

PotentialField random_potential(const SpaceTimeGrid& g, std::mt19937& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<double> v(static_cast<std::size_t>(g.num_time_nodes() * g.num_cells()));
  for (double& x : v) x = n(rng);
  return PotentialField(g, v);
}

ProblemSpec with_hamiltonian(const ProblemSpec& s, HamiltonianSpec H) {
  return ProblemSpec(s.grid(), s.m0(), s.m1(), s.V(), H, s.coupling());
}

}  // namespace

TEST_CASE("recovery of m from u") {
  const auto spec = bench::uniform_stationary(8, 0.5);
  const auto& g = spec.grid();
  const auto m = m_from_u(from_function(g, [](double t, double) { return 0.3 * t; }), spec);
  for (double v : m.values()) CHECK(v == doctest::Approx(std::exp(-0.3 / 0.5)).epsilon(1e-13));
  // u = b x: interior cells see H(b) = b^2 / 2
  const auto mx = m_from_u(from_function(g, [](double, double x) { return 0.4 * x; }), spec);
  for (int k = 0; k < g.num_time_nodes(); ++k)
    for (int i = 1; i + 1 < g.num_cells(); ++i) CHECK(mx.at(k, i) == doctest::Approx(std::exp(0.08 / 0.5)).epsilon(1e-12));
  // the potential enters with tau
  const auto gs = bench::gibbs(8, 0.5);
  const auto mg = m_from_u(PotentialField::zeros(gs.grid()), gs, 0.5);
  for (int i = 0; i < 8; ++i) CHECK(mg.at(3, i) == doctest::Approx(std::exp(-0.5 * gs.V()[i] / 0.5)).epsilon(1e-12));
}

TEST_CASE("residual of a quadratic-in-time potential") {
  const auto spec = bench::uniform_stationary(8, 1.0);
  const auto& g = spec.grid();
  const auto u = from_function(g, [](double t, double) { return t * t; });
  const auto r = assemble_residual(u, spec, {0.0, 0.0, 1.0});
  for (int k = 0; k <= g.n_t(); ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      const double expect = k == 0 ? 0.0 : (k == g.n_t() ? -2.0 : -2.0);
      CHECK(r.rows[k * g.n_x() + i] == doctest::Approx(expect).epsilon(1e-10).scale(1.0));
    }
  for (double v : r.lateral) CHECK(v == 0.0);
}

TEST_CASE("Gibbs potential solves the discrete system") {
  const double eps = 0.5;
  const auto spec = bench::gibbs(16, eps);
  double Z = 0.0;
  for (double v : spec.V()) Z += std::exp(-v / eps) * spec.grid().dx();
  const auto u = from_function(spec.grid(), [&](double t, double) { return eps * std::log(Z) * t; });
  CHECK(assemble_residual(u, spec, {0.0, 0.0, 1.0}).sup_norm() <= 1e-12);
  CHECK(bench::sup_diff(m_from_u(u, spec).slice(5), spec.m0()) <= 1e-12);
}

TEST_CASE("Jacobian matches finite differences") {
  std::mt19937 rng(21);
  const std::vector<ProblemSpec> specs = {
      bench::transport(6), bench::congestion(6), bench::torus_bump(6, 0.3),
      with_hamiltonian(bench::gibbs(6), HamiltonianSpec::power(1.5, 0.5)),
      bench::transport(6, 0.2, CouplingSpec::log(0.2, 0.5))};
  const std::vector<DualParams> params = {{0.1, 0.1, 1.0}, {1.0, 1.0, 0.4}, {1e-3, 1e-2, 0.0}};
  const double h = 1e-6;
  int states = 0;
  for (const auto& spec : specs)
    for (const auto& p : params)
      for (int trial = 0; trial < 2; ++trial, ++states) {
        const auto u = random_potential(spec.grid(), rng, 0.1);
        const Eigen::MatrixXd J(assemble_jacobian(u, spec, p));
        const auto base = assemble_residual(u, spec, p).rows;
        std::vector<double> v(u.values().begin(), u.values().end());
        double err = 0.0;
        for (std::size_t c = 0; c < v.size(); ++c) {
          const double keep = v[c];
          v[c] = keep + h;
          const auto rp = assemble_residual(PotentialField(spec.grid(), v), spec, p).rows;
          v[c] = keep - h;
          const auto rm = assemble_residual(PotentialField(spec.grid(), v), spec, p).rows;
          v[c] = keep;
          const Eigen::VectorXd fd = (rp - rm) / (2 * h);
          err = std::max(err, (fd - J.col(static_cast<Eigen::Index>(c))).lpNorm<Eigen::Infinity>() /
                                  (1.0 + J.col(static_cast<Eigen::Index>(c)).lpNorm<Eigen::Infinity>()));
        }
        CHECK(err <= 1e-6);
        CHECK(base.allFinite());
      }
  CHECK(states >= 20);
}

TEST_CASE("rho and delta enter linearly") {
  std::mt19937 rng(5);
  const auto spec = bench::congestion(6);
  const auto& g = spec.grid();
  const auto u = random_potential(g, rng, 0.2);
  const auto r0 = assemble_residual(u, spec, {0.0, 0.0, 1.0}).rows;
  const auto r1 = assemble_residual(u, spec, {0.3, 0.7, 1.0}).rows;
  for (int k = 0; k <= g.n_t(); ++k)
    for (int i = 0; i < g.n_x(); ++i) {
      const int row = k * g.n_x() + i;
      const double coef = k == 0 ? 0.7 : (k == g.n_t() ? -0.7 : 0.3);
      CHECK(r1[row] - r0[row] == doctest::Approx(coef * u.at(k, i)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("no mixed coupling when the spatial gradient vanishes") {
  const auto spec = bench::transport(6);
  const auto& g = spec.grid();
  const auto u = from_function(g, [](double t, double) { return std::sin(t); });
  const auto J = assemble_jacobian(u, spec, {0.1, 0.1, 1.0});
  const int nx = g.n_x();
  for (int k = 1; k < g.n_t(); ++k)
    for (int i = 1; i + 1 < nx; ++i) {
      CHECK(J.coeff(k * nx + i, (k + 1) * nx + i + 1) == 0.0);
      CHECK(J.coeff(k * nx + i, (k - 1) * nx + i - 1) == 0.0);
    }
}

TEST_CASE("gauge invariance without penalization") {
  std::mt19937 rng(9);
  const auto spec = bench::congestion(6);
  const auto u = random_potential(spec.grid(), rng, 0.2);
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x += 3.7;
  const PotentialField shifted(spec.grid(), v);
  const auto a = assemble_residual(u, spec, {0.0, 0.0, 1.0}).rows;
  const auto b = assemble_residual(shifted, spec, {0.0, 0.0, 1.0}).rows;
  CHECK((a - b).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK(bench::sup_diff(m_from_u(u, spec).values(), m_from_u(shifted, spec).values()) <= 1e-12);
}

TEST_CASE("Gibbs and uniform solves") {
  const auto spec = bench::gibbs(16);
  const auto r = solve_dual(spec);
  REQUIRE(r.log.converged);
  for (int k = 0; k <= 16; ++k) CHECK(bench::sup_diff(r.m.slice(k), spec.m0()) <= 1e-7);
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += r.u.at(16, i) * spec.m1()[i] * spec.grid().dx();
  CHECK(std::abs(s) <= 1e-12);
  CHECK(r.log.stages.size() == 5 + 8);

  const auto uni = bench::uniform_stationary(12, 1.0, Topology::Torus);
  const auto ru = solve_dual(uni);
  REQUIRE(ru.log.converged);
  for (double m : ru.m.values()) CHECK(m == doctest::Approx(1.0).epsilon(1e-8));
  for (double u : ru.u.values()) CHECK(std::abs(u) <= 1e-8);
}

TEST_CASE("inadmissible instances are refused") {
  const auto degenerate = with_hamiltonian(bench::transport(6), HamiltonianSpec::power(1.5, 0.0));
  CHECK_THROWS_AS(require_dual_admissible(degenerate), NumericalError);
  CHECK_THROWS_AS(solve_dual(degenerate), NumericalError);
  CHECK_THROWS_AS(solve_dual(bench::transport(6, 0.0)), NumericalError);
  CHECK_NOTHROW(require_dual_admissible(with_hamiltonian(bench::transport(6), HamiltonianSpec::power(2.0, 0.0))));
}

TEST_CASE("schedule validation names keys") {
  auto key = [](ContinuationSchedule s) {
    try {
      s.validate();
    } catch (const ValidationError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  auto s = ContinuationSchedule::defaults();
  CHECK(key(s) == "<none>");
  CHECK(s.rho_sequence.front() == 1.0);
  CHECK(s.rho_sequence.back() == doctest::Approx(1e-8).epsilon(1e-14));
  s.rho_sequence = {1.0, 1.0};
  CHECK(key(s) == "dual.rho_sequence");
  s = ContinuationSchedule::defaults();
  s.delta_sequence.clear();
  CHECK(key(s) == "dual.delta_sequence");
  s = ContinuationSchedule::defaults();
  s.tau_sequence = {0.0, 0.5};
  CHECK(key(s) == "dual.tau_sequence");
  s = ContinuationSchedule::defaults();
  s.max_newton_iters = 0;
  CHECK(key(s) == "dual.max_newton_iters");
}

TEST_CASE("non-convergence is reported, not thrown") {
  auto s = ContinuationSchedule::defaults();
  s.max_newton_iters = 1;
  const auto r = solve_dual(bench::congestion(8), s);
  CHECK_FALSE(r.log.converged);
  CHECK(r.log.message.find("rho=") != std::string::npos);
}
