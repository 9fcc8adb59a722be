#include "mfp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mfp/error.hpp"
#include "mfp/estimates.hpp"
#include "mfp/io.hpp"

namespace mfp {

using nlohmann::json;

namespace {

CheckResult skipped(const std::string& name, const std::string& reason) {
  CheckResult r;
  r.name = name;
  r.skipped = true;
  r.reason = reason;
  return r;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& name : requested) {
    const std::vector<std::string> add = name == "all" ? known_checks() : std::vector<std::string>{name};
    for (const auto& a : add)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

int run_sweep(const RunConfig& cfg, const ProblemSpec& spec, std::ostream& out) {
  if (cfg.sweep.eps_list.empty()) throw ValidationError("sweep.eps_list", "missing");
  const SweepReport rep = eps_sweep(spec, cfg.sweep.eps_list, cfg.primal, cfg.sweep.floor);
  const std::filesystem::path dir = cfg.out;
  write_sweep_csv(dir / "eps_error.csv", rep);
  write_json(dir / "report.json", {{"sweep", to_json(rep)}});
  for (const auto& e : rep.entries)
    out << "eps " << e.epsilon << "  error " << e.error << "  iterations " << e.iterations
        << (e.converged ? "" : "  NOT CONVERGED") << '\n';
  out << "monotone: " << (rep.monotone ? "yes" : "no") << '\n';
  if (!rep.converged) return kExitNotConverged;
  return rep.monotone ? kExitOk : kExitCheckFailed;
}

int run_solve(const RunConfig& cfg, const ProblemSpec& spec, const std::vector<std::string>& requested,
              std::ostream& out) {
  const auto& g = spec.grid();
  const bool want_primal = cfg.method != Method::Dual;
  const bool want_dual = cfg.method != Method::Primal;
  if (want_dual) {
    try {
      require_dual_admissible(spec);
    } catch (const NumericalError& e) {
      throw ValidationError("method", e.what());
    }
  }

  std::optional<PrimalResult> primal;
  std::optional<DualResult> dual;
  json log = {{"method", to_string(cfg.method)}};
  std::vector<NamedField> fields;
  if (want_primal) {
    primal = solve_primal(spec, cfg.primal);
    log["primal"] = to_json(primal->log);
    out << "primal: " << (primal->log.converged ? "converged" : "NOT CONVERGED") << " after "
        << primal->log.iterations << " iterations, value " << primal->log.final_value << '\n';
  }
  if (want_dual) {
    dual = solve_dual(spec, cfg.dual);
    log["dual"] = to_json(dual->log);
    out << "dual: " << (dual->log.converged ? "converged" : "NOT CONVERGED") << " after "
        << dual->log.total_newton_iters << " Newton iterations, residual " << dual->log.final_residual << '\n';
    if (!dual->log.message.empty()) out << "dual: " << dual->log.message << '\n';
  }
  if (primal) {
    fields.push_back(named("m_primal", primal->state.m));
    fields.push_back(named("w_primal", primal->state.w));
  }
  if (dual) {
    fields.push_back(named("m_dual", dual->m));
    fields.push_back(named("u_dual", dual->u));
  }

  EstimateReport report;
  const std::vector<std::string> names = expand_checks(requested);
  std::vector<std::string> dual_names;
  for (const auto& n : names) {
    const auto& dn = dual_check_names();
    if (std::find(dn.begin(), dn.end(), n) != dn.end()) dual_names.push_back(n);
  }
  if (dual && !dual_names.empty()) {
    report = verify_dual(*dual, spec, dual_names);
  } else {
    for (const auto& n : dual_names) {
      if (n == "lp_bounds" && primal) report.checks.push_back(check_lp_bounds(primal->state.m, spec));
      else report.checks.push_back(skipped(n, "needs a dual solve"));
    }
  }
  const double tol = 5.0 * (g.dt() + g.dx());
  for (const auto& n : names) {
    if (n != "duality_gap" && n != "recovery_vs_primal") continue;
    if (!primal || !dual) {
      report.checks.push_back(skipped(n, "needs method both"));
      continue;
    }
    CheckResult r;
    r.name = n;
    r.tolerance = tol;
    r.rhs = tol;
    if (n == "duality_gap") {
      r.formula = "|J(primal) - J(m_dual, m_dual H_p(D u))| / (1 + |J(primal)|)";
      r.lhs = duality_gap(primal->state, dual->u, dual->m, spec);
    } else {
      r.formula = "sum_trap |m_from_u(u_hat) - m_primal| dt dx";
      r.lhs = l1_space_time(m_from_u(dual->u, spec), primal->state.m);
    }
    r.pass = r.lhs <= tol;
    report.checks.push_back(r);
  }

  const std::filesystem::path dir = cfg.out;
  write_fields_csv(dir / "fields.csv", fields);
  write_json(dir / "log.json", log);
  write_json(dir / "report.json", to_json(report));

  for (const auto& c : report.checks) {
    out << "check " << c.name << ": ";
    if (c.skipped) out << "skipped (" << c.reason << ")\n";
    else out << (c.pass ? "pass" : "FAIL") << "  lhs " << c.lhs << "  rhs " << c.rhs << '\n';
  }
  const bool converged = (!primal || primal->log.converged) && (!dual || dual->log.converged);
  if (!converged) return kExitNotConverged;
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_config(RunConfig cfg, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.verb != "solve" && opts.verb != "verify" && opts.verb != "sweep")
      throw ValidationError("verb", "expected solve, verify or sweep");
    if (opts.out) cfg.out = *opts.out;
    if (opts.method) cfg.method = method_from_string(*opts.method);
    if (opts.checks) {
      for (const auto& c : *opts.checks) {
        const auto& known = known_checks();
        if (c != "all" && std::find(known.begin(), known.end(), c) == known.end())
          throw ValidationError("checks", "unknown check '" + c + "'");
      }
      cfg.checks = *opts.checks;
    }
    if (opts.verb == "verify" && cfg.checks.empty()) cfg.checks = {"all"};
    if (opts.verb == "sweep" && cfg.sweep.eps_list.empty()) throw ValidationError("sweep.eps_list", "missing");
    const ProblemSpec spec = build_problem(cfg);
    if (opts.dry_run) {
      out << resolved_config(cfg).dump(2) << '\n';
      return kExitOk;
    }
    if (opts.verb == "sweep") return run_sweep(cfg, spec, out);
    return run_solve(cfg, spec, cfg.checks, out);
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

int run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(opts.config);
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run_config(std::move(cfg), opts, out, err);
}

}  // namespace mfp
