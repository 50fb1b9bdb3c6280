#include "serialize.hpp"

#include <fstream>
#include <sstream>

namespace steerkit::cli {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidState("matrix JSON must be a non-empty array of rows");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InvalidState("matrix JSON must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& cell = row.at(k);
      if (!cell.is_array() || cell.size() != 2) {
        throw InvalidState("matrix entries must be [re, im] pairs");
      }
      m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json directions_to_json(const std::vector<Eigen::Vector3d>& dirs) {
  json out = json::array();
  for (const auto& d : dirs) out.push_back(json::array({d.x(), d.y(), d.z()}));
  return out;
}

std::vector<Eigen::Vector3d> directions_from_json(const json& j) {
  std::vector<Eigen::Vector3d> dirs;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 3) {
      throw InvalidDirection("direction entries must be [x, y, z]");
    }
    dirs.emplace_back(item.at(0).get<double>(), item.at(1).get<double>(),
                      item.at(2).get<double>());
  }
  return dirs;
}

json model_to_json(const LhsModel& model) {
  json entries = json::array();
  for (const auto& e : model.entries) {
    entries.push_back(json{{"weight", e.weight},
                           {"bloch", json::array({e.bloch.x(), e.bloch.y(), e.bloch.z()})},
                           {"p_plus", e.p_plus}});
  }
  return json{{"type", "lhs_model"}, {"entries", std::move(entries)}};
}

LhsModel model_from_json(const json& j) {
  LhsModel model;
  for (const auto& item : j.at("entries")) {
    LhsEntry entry;
    entry.weight = item.at("weight").get<double>();
    const json& bloch = item.at("bloch");
    entry.bloch = Eigen::Vector3d(bloch.at(0).get<double>(), bloch.at(1).get<double>(),
                                  bloch.at(2).get<double>());
    entry.p_plus = item.at("p_plus").get<std::vector<double>>();
    model.entries.push_back(std::move(entry));
  }
  return model;
}

json witness_to_json(const SteeringWitness& witness) {
  json f = json::array();
  for (const auto& block : witness.f) {
    f.push_back(json::array({block(0), block(1), block(2), block(3)}));
  }
  return json{{"type", "witness"},
              {"f", std::move(f)},
              {"g", json::array({witness.g(0), witness.g(1), witness.g(2), witness.g(3)})},
              {"bound", witness.bound},
              {"value", witness.value}};
}

SteeringWitness witness_from_json(const json& j) {
  SteeringWitness witness;
  for (const auto& block : j.at("f")) {
    Eigen::Vector4d f;
    for (int i = 0; i < 4; ++i) f(i) = block.at(i).get<double>();
    witness.f.push_back(f);
  }
  const json& g = j.at("g");
  for (int i = 0; i < 4; ++i) witness.g(i) = g.at(i).get<double>();
  witness.bound = j.at("bound").get<double>();
  witness.value = j.at("value").get<double>();
  return witness;
}

json tolerances_json() {
  return json{{"lp_slack", tol::kLpSlack},
              {"reconstruction", tol::kReconstruction},
              {"psd", tol::kPsd},
              {"hermitian", tol::kHermitian}};
}

TwoQubitState state_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidState("cannot open state file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidState(std::string("state file is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("x_params")) {
      const json& x = j.at("x_params");
      XStateParams params;
      params.a = x.at("a").get<double>();
      params.b = x.at("b").get<double>();
      params.t_x = x.at("t_x").get<double>();
      params.t_y = x.at("t_y").get<double>();
      params.t_z = x.at("t_z").get<double>();
      return params.to_state();
    }
    if (j.contains("matrix")) {
      return TwoQubitState::from_matrix(matrix_from_json(j.at("matrix")));
    }
  } catch (const json::exception& e) {
    throw InvalidState(std::string("malformed state file: ") + e.what());
  }
  throw InvalidState("state file needs an 'x_params' or 'matrix' key");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidState("cannot open output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw InvalidState("failed writing output file '" + path + "'");
  }
}

}  // namespace steerkit::cli
