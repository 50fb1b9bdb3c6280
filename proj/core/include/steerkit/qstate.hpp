#pragma once

#include <Eigen/Dense>

#include "steerkit/errors.hpp"
#include "steerkit/matrix.hpp"

namespace steerkit {

/// Which subsystem of a bipartite state an operation refers to.
enum class Party { A, B };

/// Validated 4x4 density matrix of a two-qubit system.
struct TwoQubitState {
  ComplexMatrix rho;  // dim 4, Hermitian, unit trace, PSD

  /// Validates the invariants; throws InvalidState on failure.
  static TwoQubitState from_matrix(const ComplexMatrix& rho);
};

/// Validated 2x2 density matrix of a single qubit.
struct SingleQubitState {
  ComplexMatrix rho;  // dim 2

  static SingleQubitState from_matrix(const ComplexMatrix& rho);

  /// Bloch vector (x, y, z).
  Eigen::Vector3d bloch() const;
};

/// Local Bloch vectors and spin correlation matrix of a two-qubit state:
/// rho = (I4 + a.sigma x I + I x b.sigma + sum_ij T_ij sigma_i x sigma_j)/4.
struct PauliForm {
  Eigen::Vector3d a;  // Alice Bloch vector
  Eigen::Vector3d b;  // Bob Bloch vector
  Eigen::Matrix3d T;  // spin correlation matrix
};

/// Canonical five-parameter X-state: z-aligned Bloch vectors (0,0,a),
/// (0,0,b) and diagonal correlations diag(t_x, t_y, t_z).
struct XStateParams {
  double a = 0.0;
  double b = 0.0;
  double t_x = 0.0;
  double t_y = 0.0;
  double t_z = 0.0;

  /// |t_x| (the criterion requires |t_x| = |t_y|; callers check that).
  double t_perp() const;

  /// Parameter set with the two parties exchanged (a <-> b; T is diagonal,
  /// so the correlations are unchanged).
  XStateParams swapped() const;

  /// Equivalent PauliForm.
  PauliForm pauli_form() const;

  /// Reconstructs the density matrix; throws InvalidState if not PSD.
  TwoQubitState to_state() const;
};

/// a_i = Tr[rho (sigma_i x I)], b_j = Tr[rho (I x sigma_j)],
/// T_ij = Tr[rho (sigma_i x sigma_j)].
PauliForm pauli_decompose(const TwoQubitState& state);

/// Inverse of pauli_decompose; throws InvalidState if the result is not a
/// valid density matrix.
TwoQubitState pauli_reconstruct(const PauliForm& form);

/// Trace over the discarded subsystem.
SingleQubitState partial_trace(const TwoQubitState& state, Party keep);

/// Concurrence of a two-qubit X-state (throws NotXState otherwise):
/// C = 2 max(0, |X_23| - sqrt(X_11 X_44), |X_14| - sqrt(X_22 X_33)).
double concurrence(const TwoQubitState& state);

/// Same closed form evaluated directly on canonical X parameters.
double concurrence(const XStateParams& x);

/// Extracts the five real parameters after local z-rotations that make the
/// two off-diagonal entries real and non-negative (steering-preserving).
/// Throws NotXState if the matrix lacks the X pattern.
XStateParams canonicalize_x(const TwoQubitState& state);

/// |Psi_alpha> = sqrt(1-alpha)|00> + sqrt(alpha)|11>, alpha in (0, 1/2].
TwoQubitState psi_alpha(double alpha);

/// |0><0|.
SingleQubitState rho_zero();

/// Single-party marginal of psi_alpha: diag(1-alpha, alpha).
SingleQubitState rho_one(double alpha);

/// (1-mu) rho + mu I/4  (two-qubit depolarizing mix), mu in [0, 1].
TwoQubitState depolarize(const TwoQubitState& state, double mu);

/// (1-mu) rho + mu I/2  (single-qubit depolarizing mix).
SingleQubitState depolarize(const SingleQubitState& state, double mu);

}  // namespace steerkit
