#include "mfp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mfp/error.hpp"

namespace mfp::profiles {

CellProfile uniform(const SpaceTimeGrid& grid) {
  return CellProfile(static_cast<std::size_t>(grid.n_x()), 1.0 / grid.length());
}

CellProfile gaussian(const SpaceTimeGrid& grid, double mean, double std_dev, double floor) {
  if (!(std_dev > 0.0)) throw ValidationError("std", "must be > 0");
  CellProfile out(static_cast<std::size_t>(grid.n_x()));
  const int images = grid.is_torus() ? 4 : 0;
  for (int i = 0; i < grid.n_x(); ++i) {
    const double x = grid.cell_center(i);
    double v = 0.0;
    for (int k = -images; k <= images; ++k) {
      const double d = x - mean + k * grid.length();
      v += std::exp(-d * d / (2.0 * std_dev * std_dev));
    }
    out[i] = floor + v;
  }
  return out;
}

CellProfile bump(const SpaceTimeGrid& grid, double center, double radius, double floor) {
  if (!(radius > 0.0)) throw ValidationError("radius", "must be > 0");
  CellProfile out(static_cast<std::size_t>(grid.n_x()));
  for (int i = 0; i < grid.n_x(); ++i) {
    double d = grid.cell_center(i) - center;
    if (grid.is_torus()) d -= grid.length() * std::round(d / grid.length());
    const double c = std::abs(d) < radius ? std::cos(std::numbers::pi * d / (2.0 * radius)) : 0.0;
    out[i] = floor + c * c;
  }
  return out;
}

CellProfile gibbs(const SpaceTimeGrid& grid, const CellProfile& V, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon", "gibbs profile needs epsilon > 0");
  const double vmin = *std::min_element(V.begin(), V.end());
  CellProfile out(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) out[i] = std::exp(-(V[i] - vmin) / epsilon);
  return normalized(std::move(out), grid.dx());
}

CellProfile mixture(const SpaceTimeGrid& grid, const std::vector<double>& weights,
                    const std::vector<CellProfile>& components) {
  if (weights.size() != components.size() || components.empty())
    throw ValidationError("components", "mixture needs one weight per component");
  CellProfile out(static_cast<std::size_t>(grid.n_x()), 0.0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!(weights[c] >= 0.0)) throw ValidationError("weight", "must be >= 0");
    const CellProfile comp = normalized(components[c], grid.dx());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[c] * comp[i];
  }
  return out;
}

CellProfile quadratic_potential(const SpaceTimeGrid& grid, double scale, double center) {
  CellProfile out(static_cast<std::size_t>(grid.n_x()));
  for (int i = 0; i < grid.n_x(); ++i) {
    const double d = grid.cell_center(i) - center;
    out[i] = 0.5 * scale * d * d;
  }
  return out;
}

CellProfile linear_potential(const SpaceTimeGrid& grid, double slope) {
  CellProfile out(static_cast<std::size_t>(grid.n_x()));
  for (int i = 0; i < grid.n_x(); ++i) out[i] = slope * grid.cell_center(i);
  return out;
}

CellProfile cosine_potential(const SpaceTimeGrid& grid, double amplitude) {
  CellProfile out(static_cast<std::size_t>(grid.n_x()));
  for (int i = 0; i < grid.n_x(); ++i)
    out[i] = amplitude *
             std::cos(2.0 * std::numbers::pi * (grid.cell_center(i) - grid.x_min()) / grid.length());
  return out;
}

CellProfile normalized(CellProfile profile, double dx) {
  const double total = mass(profile, dx);
  if (!(total > 0.0)) throw ValidationError("density", "non-positive total mass");
  for (double& v : profile) v /= total;
  return profile;
}

}  // namespace mfp::profiles
