#pragma once

#include <Eigen/Dense>

#include "steerkit/qstate.hpp"

namespace steerkit {

/// The three 2-producible distribution scenarios:
///  - RHalfPE: n/2 random pairs (n even, > 2), full state mixes all perfect
///    matchings of the n parties;
///  - RPE: a single entangled pair placed on a random ordered pair, the
///    other n-2 parties hold |0>;
///  - SRPE: a fixed hub party (Alice) shares the pair with one random
///    partner, the other n-2 parties hold |0>.
enum class ScenarioKind { RHalfPE, RPE, SRPE };

/// Steering direction for an ordered pair. For SRPE, "Alice" is the hub.
enum class Direction { AliceToBob, BobToAlice };

/// Scenario descriptor. n is kept real-valued because sweeps and threshold
/// solvers treat it as a continuous parameter; operations that build the
/// full multiparty state demand an integer (and evenness for RHalfPE).
struct Scenario {
  ScenarioKind kind = ScenarioKind::SRPE;
  double n = 3;
  double alpha = 0.25;  // in (0, 1/2]
  double mu = 0.0;      // depolarizing noise on the entangled pair, [0, 1]

  /// Throws InvalidScenario on domain violations. With integer_n, n must be
  /// an integer (and even for RHalfPE); otherwise real n is allowed, but an
  /// integral RHalfPE n must still be even.
  void validate(bool integer_n = false) const;

  /// n rounded to the nearest integer; throws InvalidScenario if n is not
  /// integral within 1e-9.
  int integral_n() const;
};

/// Dense 2^n x 2^n multiparty density matrix.
struct MultiPartyState {
  int n = 0;
  ComplexMatrix rho;
};

/// Exact mixture over pair placements:
///  RHalfPE: (1/#matchings) sum over perfect matchings of tensor products of
///           the noisy pair (the permutation sum collapses to distinct
///           matchings with equal weights);
///  RPE:     (1/(n(n-1))) sum over ordered pairs (i,j) of rho^mu_alpha on
///           (i,j) with |0><0| elsewhere;
///  SRPE:    (1/(n-1)) sum over j of rho^mu_alpha on (A, B_j) with |0><0|
///           elsewhere.
/// Noise acts on the entangled pair only; filler qubits stay pure.
/// Requires integer n <= 8 (NTooLarge beyond).
MultiPartyState build_full_state(const Scenario& sc);

/// Two-party marginal of a multiparty state (trace over all others).
TwoQubitState pair_marginal(const MultiPartyState& state, int i, int j);

/// Closed-form bipartite reduction in canonical X parameters.
/// For SRPE the pair is (hub, spoke); role BobToAlice returns the parameter
/// set with a and b exchanged. RHalfPE and RPE reductions are symmetric.
XStateParams reduced_pair_state(const Scenario& sc,
                                Direction role = Direction::AliceToBob);

/// Set of alpha in (0, 1/2] where the reduced pair state is entangled,
/// reported as an interval (lo, hi); empty when no alpha qualifies.
struct AlphaInterval {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double alpha) const { return !empty && lo < alpha && alpha < hi; }
};

/// Entanglement threshold of the reduced state. For mu = 0 the closed forms
/// are returned exactly:
///   RHalfPE: alpha < (1 - sqrt(n(n-4))/(n-2))/2   (all alpha when n <= 4),
///   RPE:     alpha < 1/(n^2 - 4n + 5),
///   SRPE:    all alpha in (0, 1/2].
/// For mu > 0 the interval is located by scanning the concurrence sign and
/// bisecting each boundary to 1e-9 (the entangled set can be two-sided).
AlphaInterval entanglement_threshold(ScenarioKind kind, double n, double mu);

}  // namespace steerkit
