#include "mfp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mfp/error.hpp"

namespace mfp {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

NamedField named(const std::string& name, const DensityField& m) { return {name, &m.grid(), m.values(), false}; }
NamedField named(const std::string& name, const PotentialField& u) { return {name, &u.grid(), u.values(), false}; }
NamedField named(const std::string& name, const MomentumField& w) { return {name, &w.grid(), w.values(), true}; }

void write_fields_csv(const std::filesystem::path& path, const std::vector<NamedField>& fields) {
  std::ofstream out = open_out(path);
  out << "field,t_index,x_index,value\n";
  for (const auto& f : fields) {
    const int width = f.on_faces ? f.grid->num_faces() : f.grid->n_x();
    for (std::size_t idx = 0; idx < f.values.size(); ++idx)
      out << f.name << ',' << idx / width << ',' << idx % width << ',' << fmt(f.values[idx]) << '\n';
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const PrimalLog& log) {
  json values = json::array(), residuals = json::array();
  for (double v : log.values) values.push_back(number(v));
  for (double v : log.residuals) residuals.push_back(number(v));
  return {{"iterations", log.iterations},
          {"converged", log.converged},
          {"final_value", number(log.final_value)},
          {"feasibility", number(log.feasibility)},
          {"fixed_point_residual", number(log.fixed_point_residual)},
          {"values", values},
          {"residuals", residuals}};
}

json to_json(const DualLog& log) {
  json stages = json::array();
  for (const auto& s : log.stages)
    stages.push_back({{"rho", s.rho},
                      {"delta", s.delta},
                      {"tau", s.tau},
                      {"newton_iters", s.newton_iters},
                      {"residual", number(s.residual)},
                      {"converged", s.converged},
                      {"sup_u", number(s.sup_u)},
                      {"sup_bound_rhs", number(s.sup_bound_rhs)},
                      {"grad_sup", number(s.grad_sup)}});
  return {{"stages", stages},
          {"converged", log.converged},
          {"total_newton_iters", log.total_newton_iters},
          {"final_residual", number(log.final_residual)},
          {"refinements", log.refinements},
          {"message", log.message}};
}

json to_json(const CheckResult& c) {
  json values = json::object();
  for (const auto& [k, v] : c.values) values[k] = number(v);
  json j = {{"name", c.name},       {"formula", c.formula}, {"lhs", number(c.lhs)},
            {"rhs", number(c.rhs)}, {"tolerance", number(c.tolerance)},
            {"pass", c.pass},       {"skipped", c.skipped}, {"values", values}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

json to_json(const EstimateReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json constants = json::object();
  for (const auto& [k, v] : r.constants) constants[k] = number(v);
  return {{"checks", checks}, {"constants", constants}, {"all_pass", r.all_pass()}};
}

json to_json(const SweepReport& s) {
  json entries = json::array();
  for (const auto& e : s.entries)
    entries.push_back({{"epsilon", e.epsilon},
                       {"error", number(e.error)},
                       {"converged", e.converged},
                       {"iterations", e.iterations}});
  return {{"entries", entries}, {"monotone", s.monotone}, {"converged", s.converged}, {"pass", s.pass}};
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& sweep) {
  std::ofstream out = open_out(path);
  out << "eps,error,converged,iterations,monotone\n";
  for (const auto& e : sweep.entries)
    out << fmt(e.epsilon) << ',' << fmt(e.error) << ',' << (e.converged ? 1 : 0) << ',' << e.iterations << ','
        << (sweep.monotone ? 1 : 0) << '\n';
}

}  // namespace mfp
