#pragma once

#include <Eigen/Dense>
#include <complex>

namespace steerkit {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major storage; dimension via rows().
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace tol {
/// Hermiticity check: max |M - M^dagger| entrywise.
inline constexpr double kHermitian = 1e-12;
/// Unit-trace check: |Tr M - 1|.
inline constexpr double kTrace = 1e-12;
/// Positivity check: minimum eigenvalue bound (boundary states allowed).
inline constexpr double kPsd = -1e-10;
/// Forbidden entries of the X pattern, absolute.
inline constexpr double kXPattern = 1e-12;
/// Measurement directions must be unit vectors within this bound.
inline constexpr double kUnitDirection = 1e-12;
/// Per-coordinate slack accepted by the LP feasibility test.
inline constexpr double kLpSlack = 1e-9;
/// Independent reconstruction check for emitted LHS models.
inline constexpr double kReconstruction = 1e-8;
}  // namespace tol

/// Kronecker (tensor) product, row-major dense.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_{ij} |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);

/// The Pauli basis {identity, sigma_x, sigma_y, sigma_z} as 2x2 matrices.
const ComplexMatrix& pauli(int i);

/// (identity + n . sigma) / 2 for an arbitrary (not necessarily unit) n.
Eigen::Matrix2cd bloch_to_matrix(const Eigen::Vector3d& n);

/// Pauli coordinates (Tr M, Tr M sigma_x, Tr M sigma_y, Tr M sigma_z) of a
/// 2x2 Hermitian matrix; inverse of coords -> (c0*I + c.sigma)/2.
Eigen::Vector4d pauli_coords(const Eigen::Matrix2cd& m);
Eigen::Matrix2cd coords_to_matrix(const Eigen::Vector4d& c);

}  // namespace steerkit
