#include "mfp/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mfp/error.hpp"
#include "mfp/estimates.hpp"
#include "mfp/profiles.hpp"

namespace mfp {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Object reader that remembers which keys were consumed, so leftovers can be
// rejected by finish().
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const std::string& path() const { return path_; }
  std::string key(const std::string& k) const { return join(path_, k); }

  const json& raw(const std::string& k) {
    seen_.insert(k);
    if (!j_.contains(k)) throw ValidationError(key(k), "missing");
    return j_.at(k);
  }

  double number(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_number()) throw ValidationError(key(k), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& k, double fallback) { return has(k) ? number(k) : fallback; }

  int integer(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_number_integer()) throw ValidationError(key(k), "expected an integer");
    const auto x = v.get<long long>();
    if (x < -(1LL << 31) || x > (1LL << 31) - 1) throw ValidationError(key(k), "out of range");
    return static_cast<int>(x);
  }
  int integer(const std::string& k, int fallback) { return has(k) ? integer(k) : fallback; }

  bool boolean(const std::string& k, bool fallback) {
    if (!has(k)) return fallback;
    const json& v = raw(k);
    if (!v.is_boolean()) throw ValidationError(key(k), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_string()) throw ValidationError(key(k), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& k, const std::string& fallback) { return has(k) ? text(k) : fallback; }

  std::vector<double> numbers(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_array()) throw ValidationError(key(k), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ValidationError(key(k), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Block child(const std::string& k) {
    seen_.insert(k);
    if (!j_.contains(k)) throw ValidationError(key(k), "missing");
    return Block(j_.at(k), key(k));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ValidationError(key(it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Re-throws profile errors under the config path of the block.
template <class F>
auto scoped(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    if (e.key().rfind(path, 0) == 0) throw;
    const std::string what = e.what();
    const std::string msg = e.key().empty() ? what : what.substr(e.key().size() + 2);
    throw ValidationError(join(path, e.key()), msg);
  }
}

CellProfile read_csv_profile(const std::filesystem::path& path, const std::string& key) {
  std::ifstream in(path);
  if (!in) throw ValidationError(key, "cannot read '" + path.string() + "'");
  CellProfile out;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ValidationError(key, "bad number '" + tok + "' in '" + path.string() + "'");
      }
    }
  }
  return out;
}

CellProfile build_potential(Block b, const SpaceTimeGrid& g) {
  const std::string family = b.text("family", "zero");
  CellProfile V;
  if (family == "zero") {
    V.assign(static_cast<std::size_t>(g.n_x()), 0.0);
  } else if (family == "quadratic") {
    V = profiles::quadratic_potential(g, b.number("scale", 1.0), b.number("center", 0.0));
  } else if (family == "linear") {
    V = profiles::linear_potential(g, b.number("slope"));
  } else if (family == "cosine") {
    V = profiles::cosine_potential(g, b.number("amplitude"));
  } else {
    throw ValidationError(b.key("family"), "unknown potential family '" + family + "'");
  }
  b.finish();
  return V;
}

CellProfile build_density(Block b, const SpaceTimeGrid& g, const CellProfile& V, double eps,
                          const std::filesystem::path& base) {
  const std::string family = b.text("family");
  CellProfile out = scoped(b.path(), [&]() -> CellProfile {
    if (family == "uniform") return profiles::uniform(g);
    if (family == "gaussian")
      return profiles::gaussian(g, b.number("mean"), b.number("std"), b.number("floor", 0.0));
    if (family == "bump") return profiles::bump(g, b.number("center"), b.number("radius"), b.number("floor", 0.0));
    if (family == "gibbs") return profiles::gibbs(g, V, b.number("epsilon", eps));
    if (family == "csv") {
      std::filesystem::path p = b.text("path");
      if (p.is_relative()) p = base / p;
      return read_csv_profile(p, b.key("path"));
    }
    if (family == "mixture") {
      const std::vector<double> weights = b.numbers("weights");
      const json& comps = b.raw("components");
      if (!comps.is_array()) throw ValidationError(b.key("components"), "expected an array");
      std::vector<CellProfile> parts;
      for (std::size_t c = 0; c < comps.size(); ++c)
        parts.push_back(build_density(Block(comps[c], b.key("components") + "." + std::to_string(c)), g, V, eps, base));
      return profiles::mixture(g, weights, parts);
    }
    throw ValidationError("family", "unknown density family '" + family + "'");
  });
  b.finish();
  return out;
}

HamiltonianSpec build_hamiltonian(Block b) {
  const std::string family = b.text("family", "quadratic");
  const double scale = b.number("scale", 1.0);
  HamiltonianSpec H = [&] {
    if (family == "quadratic") return HamiltonianSpec::quadratic(scale);
    if (family == "power") return HamiltonianSpec::power(b.number("q"), b.number("varpi", 1.0), scale);
    throw ValidationError(b.key("family"), "unknown Hamiltonian family '" + family + "'");
  }();
  b.finish();
  return H;
}

CouplingSpec build_coupling(Block b) {
  const double eps = b.number("epsilon");
  const std::string family = b.text("f_family", "zero");
  double c = 1.0, a = 1.0;
  if (b.has("f_params")) {
    Block p = b.child("f_params");
    c = p.number("c", 1.0);
    a = p.number("a", 1.0);
    p.finish();
  }
  b.finish();
  if (family == "zero") return CouplingSpec::zero(eps);
  if (family == "power") return CouplingSpec::power(eps, c, a);
  if (family == "log") return CouplingSpec::log(eps, c);
  throw ValidationError("coupling.f_family", "unknown coupling family '" + family + "'");
}

PrimalConfig parse_primal(Block b) {
  PrimalConfig p;
  p.sigma = b.number("sigma", p.sigma);
  p.theta = b.number("theta", p.theta);
  p.tol_kkt = b.number("tol_kkt", p.tol_kkt);
  p.tol_mass = b.number("tol_mass", p.tol_mass);
  p.max_iters = b.integer("max_iters", p.max_iters);
  b.finish();
  p.validate();
  return p;
}

ContinuationSchedule parse_dual(Block b) {
  ContinuationSchedule s = ContinuationSchedule::defaults();
  if (b.has("rho_sequence")) s.rho_sequence = b.numbers("rho_sequence");
  if (b.has("delta_sequence")) s.delta_sequence = b.numbers("delta_sequence");
  if (b.has("tau_sequence")) s.tau_sequence = b.numbers("tau_sequence");
  s.tol_residual = b.number("tol_residual", s.tol_residual);
  s.tol_step = b.number("tol_step", s.tol_step);
  s.max_newton_iters = b.integer("max_newton_iters", s.max_newton_iters);
  s.picard = b.boolean("picard", s.picard);
  b.finish();
  s.validate();
  return s;
}

const std::set<std::string> kProblemKeys = {"grid", "potential", "m0", "m1", "hamiltonian", "coupling"};

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Primal: return "primal";
    case Method::Dual: return "dual";
    case Method::Both: return "both";
  }
  return "dual";
}

Method method_from_string(const std::string& name) {
  if (name == "primal") return Method::Primal;
  if (name == "dual") return Method::Dual;
  if (name == "both") return Method::Both;
  throw ValidationError("method", "expected primal, dual or both, got '" + name + "'");
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v = dual_check_names();
    v.push_back("duality_gap");
    v.push_back("recovery_vs_primal");
    return v;
  }();
  return names;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("config is not valid JSON: ") + e.what());
  }
  Block top(j, "");
  RunConfig cfg;
  cfg.base_dir = base_dir;
  cfg.problem = json::object();
  for (const auto& k : kProblemKeys) {
    if ((k == "potential" || k == "hamiltonian") && !top.has(k)) continue;
    cfg.problem[k] = top.raw(k);
  }
  cfg.method = method_from_string(top.text("method", "dual"));
  if (top.has("primal")) cfg.primal = parse_primal(top.child("primal"));
  if (top.has("dual")) cfg.dual = parse_dual(top.child("dual"));
  if (top.has("checks")) {
    const json& c = top.raw("checks");
    if (!c.is_array()) throw ValidationError("checks", "expected an array of names");
    for (const auto& e : c) {
      if (!e.is_string()) throw ValidationError("checks", "expected an array of names");
      const std::string name = e.get<std::string>();
      const auto& known = known_checks();
      if (name != "all" && std::find(known.begin(), known.end(), name) == known.end())
        throw ValidationError("checks", "unknown check '" + name + "'");
      cfg.checks.push_back(name);
    }
  }
  if (top.has("sweep")) {
    Block s = top.child("sweep");
    cfg.sweep.eps_list = s.numbers("eps_list");
    cfg.sweep.floor = s.number("floor", 0.0);
    s.finish();
    if (cfg.sweep.eps_list.empty()) throw ValidationError("sweep.eps_list", "must not be empty");
    for (double e : cfg.sweep.eps_list)
      if (!(e >= 0.0)) throw ValidationError("sweep.eps_list", "entries must be >= 0");
    if (!(cfg.sweep.floor >= 0.0)) throw ValidationError("sweep.floor", "must be >= 0");
  }
  cfg.out = top.text("out", cfg.out);
  if (top.has("seed")) {
    const json& s = top.raw("seed");
    if (!s.is_number_unsigned()) throw ValidationError("seed", "expected a nonnegative integer");
    cfg.seed = s.get<unsigned long long>();
  }
  top.finish();
  // Resolve the problem now so configuration errors surface at parse time.
  build_problem(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("", "cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

ProblemSpec build_problem(const RunConfig& cfg) {
  const json& p = cfg.problem;
  Block grid(p.at("grid"), "grid");
  const double T = grid.number("T", 1.0);
  const double x_min = grid.number("x_min", 0.0);
  const double x_max = grid.number("x_max", 1.0);
  const int n_t = grid.integer("n_t");
  const int n_x = grid.integer("n_x");
  const Topology topo = topology_from_string(grid.text("topology", "interval"));
  grid.finish();
  const SpaceTimeGrid g(T, x_min, x_max, n_t, n_x, topo);

  const CouplingSpec coupling = build_coupling(Block(p.at("coupling"), "coupling"));
  const HamiltonianSpec H =
      p.contains("hamiltonian") ? build_hamiltonian(Block(p.at("hamiltonian"), "hamiltonian")) : HamiltonianSpec::quadratic();
  const CellProfile V = p.contains("potential") ? build_potential(Block(p.at("potential"), "potential"), g)
                                                : CellProfile(static_cast<std::size_t>(n_x), 0.0);
  CellProfile m0 = build_density(Block(p.at("m0"), "m0"), g, V, coupling.epsilon(), cfg.base_dir);
  CellProfile m1 = build_density(Block(p.at("m1"), "m1"), g, V, coupling.epsilon(), cfg.base_dir);
  return scoped("", [&] { return ProblemSpec(g, std::move(m0), std::move(m1), V, H, coupling); });
}

json resolved_config(const RunConfig& cfg) {
  const ProblemSpec spec = build_problem(cfg);
  const auto& g = spec.grid();
  json j = cfg.problem;
  j["method"] = to_string(cfg.method);
  j["primal"] = {{"sigma", cfg.primal.sigma},
                 {"theta", cfg.primal.theta},
                 {"tol_kkt", cfg.primal.tol_kkt},
                 {"tol_mass", cfg.primal.tol_mass},
                 {"max_iters", cfg.primal.max_iters}};
  j["dual"] = {{"rho_sequence", cfg.dual.rho_sequence},
               {"delta_sequence", cfg.dual.delta_sequence},
               {"tau_sequence", cfg.dual.tau_sequence},
               {"tol_residual", cfg.dual.tol_residual},
               {"tol_step", cfg.dual.tol_step},
               {"max_newton_iters", cfg.dual.max_newton_iters},
               {"picard", cfg.dual.picard}};
  j["checks"] = cfg.checks;
  if (!cfg.sweep.eps_list.empty()) j["sweep"] = {{"eps_list", cfg.sweep.eps_list}, {"floor", cfg.sweep.floor}};
  j["out"] = cfg.out;
  j["seed"] = cfg.seed;
  const ValidationReport v = validate_problem(spec);
  j["derived"] = {{"dt", g.dt()},
                  {"dx", g.dx()},
                  {"raw_mass_m0", spec.raw_mass_m0()},
                  {"raw_mass_m1", spec.raw_mass_m1()},
                  {"min_density", v.min_density},
                  {"lipschitz_V", spec.lipschitz_V()},
                  {"admissible", v.admissible},
                  {"reasons", v.reasons}};
  return j;
}

}  // namespace mfp
