#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfp/config.hpp"

namespace mfp {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNotConverged = 2, kExitCheckFailed = 3 };

struct RunOptions {
  std::string verb = "solve";  ///< solve | verify | sweep
  std::filesystem::path config;
  std::optional<std::string> out;
  std::optional<std::string> method;
  std::optional<std::vector<std::string>> checks;
  bool dry_run = false;
};

/// Runs one CLI invocation. Human-readable progress goes to `out`, errors to
/// `err`; data files go to the output directory.
int run(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Same, on an already parsed configuration.
int run_config(RunConfig cfg, const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace mfp
