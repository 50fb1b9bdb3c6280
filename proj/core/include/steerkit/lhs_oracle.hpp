#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <vector>

#include "steerkit/assemblage.hpp"
#include "steerkit/criteria.hpp"
#include "steerkit/polytope.hpp"

namespace steerkit {

/// Hidden state of a local-hidden-state model: a Bloch vector with a weight
/// and the probability of outcome + per setting.
struct LhsEntry {
  double weight = 0.0;
  Eigen::Vector3d bloch = Eigen::Vector3d::Zero();
  std::vector<double> p_plus;
};

/// Explicit LHS model; reconstructs an assemblage via
/// sigma_{+|s} = sum_lam weight_lam p_plus_lam[s] rho(bloch_lam).
struct LhsModel {
  std::vector<LhsEntry> entries;

  AssemblageCoords reconstruct_coords(int settings) const;

  /// Entrywise reconstruction against a target, max |delta| over Pauli
  /// coordinates, settings and outcomes.
  double reconstruction_error(const AssemblageCoords& target) const;
};

/// Farkas dual of an infeasible LHS program, used as a steering witness:
/// for every hidden vertex v and deterministic response d,
///   g.(1,v) + sum_s max(0, f_s.(1,v)) <= bound,
/// while the assemblage evaluates to value > bound.
struct SteeringWitness {
  std::vector<Eigen::Vector4d> f;  // one block per setting
  Eigen::Vector4d g = Eigen::Vector4d::Zero();
  double bound = 0.0;
  double value = 0.0;

  /// Left side of the column inequality, maximized exactly over the
  /// response set for a fixed vertex.
  double column_value(const Eigen::Vector3d& vertex) const;

  /// Evaluation on an assemblage: sum_s f_s . plus[s] + g . total.
  double assemblage_value(const AssemblageCoords& coords) const;

  /// Re-checks the separation from scratch; returns the margin
  /// value - max_column (positive = valid witness).
  double verify(const AssemblageCoords& coords,
                const std::vector<Eigen::Vector3d>& vertices) const;
};

enum class Verdict { Steerable, Unsteerable, Undecided };

/// Decision with a re-verifiable certificate: an LhsModel for Unsteerable,
/// a witness for Steerable, and the pair of one-sided LP residuals for
/// Undecided.
struct SteeringVerdict {
  Verdict status = Verdict::Undecided;
  std::optional<LhsModel> model;
  std::optional<SteeringWitness> witness;
  /// Phase-1 residuals of the two one-sided programs where available
  /// (NaN when a side was not run).
  double inscribed_residual = std::numeric_limits<double>::quiet_NaN();
  double circumscribed_residual = std::numeric_limits<double>::quiet_NaN();
};

/// LP feasibility of an LHS decomposition over deterministic responses and
/// hidden states at the polytope vertices.
///   Inscribed + feasible       -> Unsteerable for this measurement set;
///   Circumscribed + infeasible -> Steerable for this measurement set;
///   otherwise                  -> Undecided.
/// Guarded to k <= 12 settings; larger measurement sets belong to
/// classify_all_projective. Throws SolverNumericalFailure if the LP stalls.
SteeringVerdict lhs_feasible(const Assemblage& asm_, const BlochPolytope& poly);

/// Two-sided certificates approximating steerability under all projective
/// measurements, on an icosphere direction net of (snapped) size
/// `resolution` (>= 6, else ResolutionTooLow):
///  - Steerable: the true assemblage on the net admits no LHS even over the
///    circumscribed hidden polytope (a finite subset of all projective
///    measurements already witnesses steering);
///  - Unsteerable: the formal assemblage at the inflated directions n/c
///    (c = net covering cosine) admits an LHS over the inscribed hidden
///    polytope. Every unit direction u satisfies c u in hull(net), so the
///    model extends affinely to all projective measurements of the original
///    state;
///  - otherwise Undecided with both residuals.
SteeringVerdict classify_all_projective(const TwoQubitState& state, int resolution);

/// Explicit optimal-ensemble LHS model for a canonical X-state under the
/// dihedral scheme of order m, valid whenever the criterion is NOT violated
/// (2m sin(pi/2m) <= F/t_perp; throws StateIsSteerable otherwise).
/// 4m hidden states: azimuths pi/2 - (2l+1)pi/(2m), l = 0..2m-1, with polar
/// parameters z_+ = (b+t_z)/(1+a) (weight (1+a)/2 split over l) and
/// z_- = (b-t_z)/(1-a); sigma_z responses are deterministic per family, and
/// equatorial responses mix the half-plane rule with the uniform response by
/// the damping factor gamma = 2m sin(pi/2m) t_perp / F, which reproduces the
/// transverse correlations exactly.
LhsModel construct_xstate_lhs_ensemble(const XStateParams& x, int m);

namespace detail_oracle {
/// Both one-sided attempts, exposed for the sandwich property test.
struct ProjectiveAttempts {
  SteeringVerdict steerable_attempt;    // circumscribed side
  SteeringVerdict unsteerable_attempt;  // inscribed/inflated side
  double covering_cosine = 0.0;
  int net_resolution = 0;
  int hidden_resolution = 0;
};
ProjectiveAttempts classify_all_projective_attempts(const TwoQubitState& state,
                                                    int resolution);
}  // namespace detail_oracle

}  // namespace steerkit
