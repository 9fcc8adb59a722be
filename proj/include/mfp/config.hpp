#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfp/dual_solver.hpp"
#include "mfp/primal_solver.hpp"
#include "mfp/problem.hpp"

namespace mfp {

enum class Method { Primal, Dual, Both };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

struct SweepConfig {
  std::vector<double> eps_list;
  double floor = 0.0;  ///< discretization floor for the monotonicity test
};

/// Everything a run needs. The problem block is kept as parsed JSON and
/// resolved by build_problem, so the resolved spec can be echoed verbatim.
struct RunConfig {
  nlohmann::json problem;  ///< grid, potential, m0, m1, hamiltonian, coupling
  Method method = Method::Dual;
  PrimalConfig primal;
  ContinuationSchedule dual = ContinuationSchedule::defaults();
  std::vector<std::string> checks;
  SweepConfig sweep;
  std::string out = "out";
  unsigned long long seed = 0;
  std::filesystem::path base_dir;  ///< directory of the config file, for relative csv paths
};

/// Parses JSON text (comments allowed). Unknown keys are rejected and every
/// error is a ValidationError naming the key, e.g. "grid.n_t".
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Builds the discrete problem from the problem block.
ProblemSpec build_problem(const RunConfig& cfg);

/// The resolved configuration: every default filled in, plus derived grid
/// quantities. Used by --dry-run.
nlohmann::json resolved_config(const RunConfig& cfg);

/// Names accepted in "checks" (besides "all").
const std::vector<std::string>& known_checks();

}  // namespace mfp
