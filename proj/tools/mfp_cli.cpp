// mfp: solve, verify and sweep entropic mean-field planning problems from a
// JSON config (comments allowed). See README.md for the config grammar.
//
//   mfp solve  --config configs/gibbs.cfg [--out dir] [--method primal|dual|both]
//   mfp verify --config configs/transport.cfg --checks all
//   mfp sweep  --config configs/shifted_bump_eps_sweep.cfg
//
// Exit codes: 0 ok, 1 config error, 2 non-convergence, 3 check failure.

#include <iostream>

#include <CLI11.hpp>

#include "mfp/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Entropic mean-field planning solver"};
  app.require_subcommand(1);
  mfp::RunOptions opts;
  std::string out, method;
  std::vector<std::string> checks;

  const std::pair<const char*, const char*> verbs[] = {
      {"solve", "run the solvers and the checks listed in the config"},
      {"verify", "solve, then run checks (all by default)"},
      {"sweep", "primal solves over sweep.eps_list against the geodesic"}};
  for (const auto& [verb, help] : verbs) {
    CLI::App* sub = app.add_subcommand(verb, help);
    sub->add_option("--config", opts.config, "config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_option("--method", method, "primal, dual or both (overrides the config)");
    sub->add_flag("--dry-run", opts.dry_run, "validate and print the resolved config");
    if (std::string(verb) == "verify") sub->add_option("--checks", checks, "all or a comma-separated list")->delimiter(',');
    sub->callback([&opts, verb] { opts.verb = verb; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mfp::kExitConfig;
  }
  if (!out.empty()) opts.out = out;
  if (!method.empty()) opts.method = method;
  if (!checks.empty()) opts.checks = checks;
  return mfp::run(opts, std::cout, std::cerr);
}
