#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "steerkit/steerkit.hpp"

namespace steerkit::cli {

using json = nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json directions_to_json(const std::vector<Eigen::Vector3d>& dirs);
std::vector<Eigen::Vector3d> directions_from_json(const json& j);

json model_to_json(const LhsModel& model);
LhsModel model_from_json(const json& j);

json witness_to_json(const SteeringWitness& witness);
SteeringWitness witness_from_json(const json& j);

json tolerances_json();

/// Reads a state file: {"x_params": {"a":..,"b":..,"t_x":..,"t_y":..,"t_z":..}}
/// or {"matrix": [[[re,im] x4] x4]}.
TwoQubitState state_from_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace steerkit::cli
