#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "steerkit/assemblage.hpp"

namespace steerkit::detail {

/// One structural column of the LHS feasibility program: a hidden state at
/// polytope vertex `vertex` together with a deterministic response
/// (responses[s] = 1 means outcome + for setting s).
struct LhsColumn {
  int vertex = -1;
  std::vector<std::uint8_t> responses;
};

/// Result of the phase-1 feasibility solve of
///   sum_c q_c [resp_c(s) = +] (1, v_c) = coords.plus[s]   for each s,
///   sum_c q_c (1, v_c)                 = coords.total,     q >= 0.
struct LhsLpResult {
  bool feasible = false;   // objective <= feasibility tolerance
  double objective = 0.0;  // residual infeasibility (sum of artificials)
  // Active columns and their weights (feasible case).
  std::vector<LhsColumn> columns;
  std::vector<double> weights;
  // Phase-1 dual in the original row frame: 4 coordinates per setting block
  // followed by 4 for the barycenter block (infeasible case: a Farkas
  // certificate with y^T A <= ~0 on every column and y^T b = objective > 0).
  Eigen::VectorXd dual;
  int iterations = 0;
};

/// Revised phase-1 simplex with exact column pricing over the deterministic
/// responses (for fixed vertex v the best response is chosen per setting by
/// the sign of the dual block), so the exponential strategy set is never
/// enumerated. Throws SolverNumericalFailure if the iteration cap is hit or
/// the factorization degrades beyond repair.
LhsLpResult solve_lhs_lp(const AssemblageCoords& target,
                         const std::vector<Eigen::Vector3d>& vertices);

}  // namespace steerkit::detail
