#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mfp/dual_solver.hpp"
#include "mfp/estimates.hpp"
#include "mfp/primal_solver.hpp"

namespace mfp {

/// One named field on the grid: density and potential use (time node, cell),
/// momentum uses (time cell, face) and is written with x_index = face.
struct NamedField {
  std::string name;
  const SpaceTimeGrid* grid = nullptr;
  std::span<const double> values;
  bool on_faces = false;
};

NamedField named(const std::string& name, const DensityField& m);
NamedField named(const std::string& name, const PotentialField& u);
NamedField named(const std::string& name, const MomentumField& w);

/// CSV with header field,t_index,x_index,value; values in %.17g.
void write_fields_csv(const std::filesystem::path& path, const std::vector<NamedField>& fields);

/// Pretty-printed JSON followed by a newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Doubles as JSON numbers; non-finite values become the strings "inf", "-inf", "nan".
nlohmann::json number(double v);

nlohmann::json to_json(const PrimalLog& log);
nlohmann::json to_json(const DualLog& log);
nlohmann::json to_json(const CheckResult& check);
nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const SweepReport& sweep);

/// eps,error,converged,iterations,monotone per entry in sweep order; monotone
/// repeats the sweep-level flag.
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& sweep);

}  // namespace mfp
