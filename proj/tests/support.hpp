#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mfp/profiles.hpp"
#include "mfp/problem.hpp"

// Benchmark instances shared by the test suites and the acceptance run.
namespace bench {

using namespace mfp;

inline ProblemSpec gibbs(int n, double eps = 0.5) {
  SpaceTimeGrid g(1.0, -2.0, 2.0, n, n);
  const CellProfile V = profiles::quadratic_potential(g, 1.0);
  const CellProfile m = profiles::gibbs(g, V, eps);
  return ProblemSpec(g, m, m, V, HamiltonianSpec::quadratic(), CouplingSpec::zero(eps));
}

inline ProblemSpec transport(int n, double eps = 0.1, CouplingSpec coupling = CouplingSpec::zero(0.1)) {
  SpaceTimeGrid g(1.0, 0.0, 1.0, n, n);
  return ProblemSpec(g, profiles::bump(g, 0.3, 0.2, 0.05), profiles::bump(g, 0.6, 0.2, 0.05),
                     CellProfile(static_cast<std::size_t>(n), 0.0), HamiltonianSpec::quadratic(),
                     coupling.with_epsilon(eps));
}

inline ProblemSpec congestion(int n, double eps = 0.1) {
  return transport(n, eps, CouplingSpec::power(eps, 1.0, 1.0));
}

inline ProblemSpec uniform_stationary(int n, double eps = 1.0, Topology topo = Topology::IntervalNeumann) {
  SpaceTimeGrid g(1.0, 0.0, 1.0, n, n, topo);
  const CellProfile m = profiles::uniform(g);
  return ProblemSpec(g, m, m, CellProfile(static_cast<std::size_t>(n), 0.0), HamiltonianSpec::quadratic(),
                     CouplingSpec::zero(eps));
}

// Shifted bump on the unit torus, f = 0, V = 0.
inline ProblemSpec torus_bump(int n, double eps) {
  SpaceTimeGrid g(1.0, 0.0, 1.0, n, n, Topology::Torus);
  return ProblemSpec(g, profiles::bump(g, 0.3, 0.2, 0.05), profiles::bump(g, 0.6, 0.2, 0.05),
                     CellProfile(static_cast<std::size_t>(n), 0.0), HamiltonianSpec::quadratic(),
                     CouplingSpec::zero(eps));
}

inline double sup_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

inline std::vector<double> random_positive(std::mt19937& rng, int n, double lo = 0.2, double hi = 2.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace bench
