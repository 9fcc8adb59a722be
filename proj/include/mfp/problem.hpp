#pragma once

#include <string>
#include <vector>

#include "mfp/coupling.hpp"
#include "mfp/fields.hpp"
#include "mfp/grid.hpp"
#include "mfp/hamiltonian.hpp"

namespace mfp {

/// A full planning instance: grid, marginals m0 and m1 (renormalized to unit
/// mass on construction), potential V on cells, Hamiltonian and coupling.
///
/// Non-finite data is rejected with ValidationError. Positivity is not
/// enforced here; validate_problem reports it.
class ProblemSpec {
 public:
  ProblemSpec(SpaceTimeGrid grid, CellProfile m0, CellProfile m1, CellProfile V,
              HamiltonianSpec hamiltonian, CouplingSpec coupling);

  const SpaceTimeGrid& grid() const { return grid_; }
  const CellProfile& m0() const { return m0_; }
  const CellProfile& m1() const { return m1_; }
  const CellProfile& V() const { return V_; }
  /// Discrete derivative of V at cell centers (second-order differences).
  const CellProfile& dV() const { return dV_; }
  const HamiltonianSpec& hamiltonian() const { return hamiltonian_; }
  const CouplingSpec& coupling() const { return coupling_; }
  double epsilon() const { return coupling_.epsilon(); }

  /// Mass of the marginals as supplied, before renormalization.
  double raw_mass_m0() const { return raw_mass_m0_; }
  double raw_mass_m1() const { return raw_mass_m1_; }
  double lipschitz_V() const { return lipschitz_V_; }

  ProblemSpec with_coupling(const CouplingSpec& coupling) const;
  ProblemSpec with_grid_data(const SpaceTimeGrid& grid, CellProfile m0, CellProfile m1,
                             CellProfile V) const;
  /// Same instance with the marginals exchanged.
  ProblemSpec time_reversed() const;

 private:
  SpaceTimeGrid grid_;
  CellProfile m0_;
  CellProfile m1_;
  CellProfile V_;
  CellProfile dV_;
  HamiltonianSpec hamiltonian_;
  CouplingSpec coupling_;
  double raw_mass_m0_ = 1.0;
  double raw_mass_m1_ = 1.0;
  double lipschitz_V_ = 0.0;
};

struct ValidationReport {
  double mass_defect_m0 = 0.0;  ///< |raw mass - 1|
  double mass_defect_m1 = 0.0;
  double min_density = 0.0;     ///< min over both marginals
  double lipschitz_log_m0 = 0.0;
  double lipschitz_log_m1 = 0.0;
  double lipschitz_V = 0.0;
  bool admissible = false;
  std::vector<std::string> reasons;
};

ValidationReport validate_problem(const ProblemSpec& spec);

/// max_i |p[i+1] - p[i]| / dx, wrapping on the torus.
double discrete_lipschitz(const CellProfile& profile, const SpaceTimeGrid& grid);

/// Centered first differences at cell centers; one-sided second order at the
/// ends of an interval.
CellProfile cell_derivative(const CellProfile& profile, const SpaceTimeGrid& grid);

}  // namespace mfp
