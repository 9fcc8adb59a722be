#pragma once

#include <vector>

#include "mfp/fields.hpp"
#include "mfp/grid.hpp"

// Analytic cell profiles used to build marginals and potentials. All profiles
// are sampled at cell centers; densities are returned unnormalized unless
// stated (ProblemSpec renormalizes). On the torus, Gaussians are periodized.
namespace mfp::profiles {

CellProfile uniform(const SpaceTimeGrid& grid);

/// floor + exp(-(x - mean)^2 / (2 std^2)).
CellProfile gaussian(const SpaceTimeGrid& grid, double mean, double std_dev, double floor = 0.0);

/// floor + cos^2(pi (x - center) / (2 radius)) on |x - center| < radius.
CellProfile bump(const SpaceTimeGrid& grid, double center, double radius, double floor);

/// exp(-V / epsilon), normalized to unit mass.
CellProfile gibbs(const SpaceTimeGrid& grid, const CellProfile& V, double epsilon);

/// sum_k weight_k * component_k / mass(component_k).
CellProfile mixture(const SpaceTimeGrid& grid, const std::vector<double>& weights,
                    const std::vector<CellProfile>& components);

/// V = scale (x - center)^2 / 2.
CellProfile quadratic_potential(const SpaceTimeGrid& grid, double scale, double center = 0.0);
/// V = slope x.
CellProfile linear_potential(const SpaceTimeGrid& grid, double slope);
/// V = amplitude cos(2 pi (x - x_min) / length).
CellProfile cosine_potential(const SpaceTimeGrid& grid, double amplitude);

CellProfile normalized(CellProfile profile, double dx);

}  // namespace mfp::profiles
