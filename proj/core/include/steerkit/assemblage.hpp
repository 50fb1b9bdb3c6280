#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "steerkit/qstate.hpp"

namespace steerkit {

/// Conditional-state collection on the steered side: members[s][r] is the
/// unnormalized 2x2 state sigma_{r|s} (r in {+ -> 0, - -> 1}).
struct Assemblage {
  std::vector<std::array<Eigen::Matrix2cd, 2>> members;

  int settings() const { return static_cast<int>(members.size()); }

  /// Checks no-signalling (sum_r sigma_{r|s} identical across s), unit total
  /// trace, Hermiticity and positivity of every member; throws InvalidState
  /// on failure.
  void validate() const;
};

/// Pauli-coordinate view used by the LP: coordinates of sigma_{+|s} per
/// setting plus the setting-independent total sum_r sigma_{r|s}.
struct AssemblageCoords {
  std::vector<Eigen::Vector4d> plus;  // one per setting
  Eigen::Vector4d total = Eigen::Vector4d::Zero();

  int settings() const { return static_cast<int>(plus.size()); }
};

/// sigma_{r|s} = Tr_measuring[(Pi_{r|s} (x) I) rho] with projectors
/// Pi_{+-|s} = (I +- n_s . sigma)/2 on the measuring side. Directions must
/// be unit vectors within 1e-12 (InvalidDirection otherwise).
Assemblage assemblage_from(const TwoQubitState& state,
                           const std::vector<Eigen::Vector3d>& directions,
                           Party measuring);

AssemblageCoords coords_of(const Assemblage& asm_);

/// Affine extension of the assemblage map to arbitrary (non-unit) direction
/// vectors, in Pauli coordinates:
///   sigma_{+|u} ~ ((1 + u.a)/2, (b + T^t u)/2).
/// For unit u this equals coords_of(assemblage_from(...)); super-unit u
/// yields the formally inflated targets used by the all-projective
/// unsteerability certificate.
AssemblageCoords formal_coords(const PauliForm& form,
                               const std::vector<Eigen::Vector3d>& directions);

}  // namespace steerkit
