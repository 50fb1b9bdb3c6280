#include "steerkit/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace steerkit {

namespace {

void check_density_matrix(const ComplexMatrix& rho, int dim, const char* what) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InvalidState(std::string(what) + ": wrong dimension");
  }
  if (hermiticity_defect(rho) > tol::kHermitian) {
    throw InvalidState(std::string(what) + ": not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol::kTrace ||
      std::abs(rho.trace().imag()) > tol::kTrace) {
    throw InvalidState(std::string(what) + ": trace != 1");
  }
  if (min_eigenvalue(rho) < tol::kPsd) {
    throw InvalidState(std::string(what) + ": not positive semidefinite");
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

const ComplexMatrix& pauli(int i) {
  static const std::array<ComplexMatrix, 4> kPauli = [] {
    std::array<ComplexMatrix, 4> p;
    for (auto& m : p) m.resize(2, 2);
    const Complex I(0.0, 1.0);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -I, I, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return kPauli.at(static_cast<std::size_t>(i));
}

Eigen::Matrix2cd bloch_to_matrix(const Eigen::Vector3d& n) {
  Eigen::Matrix2cd m;
  const Complex I(0.0, 1.0);
  m << 1.0 + n.z(), n.x() - I * n.y(), n.x() + I * n.y(), 1.0 - n.z();
  return 0.5 * m;
}

Eigen::Vector4d pauli_coords(const Eigen::Matrix2cd& m) {
  Eigen::Vector4d c;
  c(0) = (m(0, 0) + m(1, 1)).real();
  c(1) = (m(0, 1) + m(1, 0)).real();
  c(2) = (Complex(0, 1) * (m(0, 1) - m(1, 0))).real();
  c(3) = (m(0, 0) - m(1, 1)).real();
  return c;
}

Eigen::Matrix2cd coords_to_matrix(const Eigen::Vector4d& c) {
  Eigen::Matrix2cd m;
  const Complex I(0.0, 1.0);
  m << c(0) + c(3), c(1) - I * c(2), c(1) + I * c(2), c(0) - c(3);
  return 0.5 * m;
}

TwoQubitState TwoQubitState::from_matrix(const ComplexMatrix& rho) {
  check_density_matrix(rho, 4, "TwoQubitState");
  return TwoQubitState{rho};
}

SingleQubitState SingleQubitState::from_matrix(const ComplexMatrix& rho) {
  check_density_matrix(rho, 2, "SingleQubitState");
  return SingleQubitState{rho};
}

Eigen::Vector3d SingleQubitState::bloch() const {
  Eigen::Matrix2cd m = rho;
  Eigen::Vector4d c = pauli_coords(m);
  return c.tail<3>();
}

double XStateParams::t_perp() const { return std::abs(t_x); }

XStateParams XStateParams::swapped() const { return {b, a, t_x, t_y, t_z}; }

PauliForm XStateParams::pauli_form() const {
  PauliForm form;
  form.a = Eigen::Vector3d(0, 0, a);
  form.b = Eigen::Vector3d(0, 0, b);
  form.T = Eigen::Vector3d(t_x, t_y, t_z).asDiagonal();
  return form;
}

TwoQubitState XStateParams::to_state() const { return pauli_reconstruct(pauli_form()); }

PauliForm pauli_decompose(const TwoQubitState& state) {
  PauliForm form;
  for (int i = 0; i < 3; ++i) {
    form.a(i) = (kron(pauli(i + 1), pauli(0)) * state.rho).trace().real();
    form.b(i) = (kron(pauli(0), pauli(i + 1)) * state.rho).trace().real();
    for (int j = 0; j < 3; ++j) {
      form.T(i, j) = (kron(pauli(i + 1), pauli(j + 1)) * state.rho).trace().real();
    }
  }
  return form;
}

TwoQubitState pauli_reconstruct(const PauliForm& form) {
  ComplexMatrix rho = kron(pauli(0), pauli(0));
  for (int i = 0; i < 3; ++i) {
    rho += form.a(i) * kron(pauli(i + 1), pauli(0));
    rho += form.b(i) * kron(pauli(0), pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      rho += form.T(i, j) * kron(pauli(i + 1), pauli(j + 1));
    }
  }
  rho *= 0.25;
  return TwoQubitState::from_matrix(rho);
}

SingleQubitState partial_trace(const TwoQubitState& state, Party keep) {
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < 2; ++k) {
        if (keep == Party::A) {
          sum += state.rho(2 * i + k, 2 * j + k);
        } else {
          sum += state.rho(2 * k + i, 2 * k + j);
        }
      }
      out(i, j) = sum;
    }
  }
  return SingleQubitState::from_matrix(out);
}

namespace {

void check_x_pattern(const ComplexMatrix& rho) {
  // Forbidden entries of the X pattern: everything off the main and anti
  // diagonal.
  static const int forbidden[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3},
                                      {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& [i, j] : forbidden) {
    if (std::abs(rho(i, j)) > tol::kXPattern) {
      throw NotXState("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") breaks the X pattern");
    }
  }
}

}  // namespace

double concurrence(const TwoQubitState& state) {
  check_x_pattern(state.rho);
  const double x11 = state.rho(0, 0).real();
  const double x22 = state.rho(1, 1).real();
  const double x33 = state.rho(2, 2).real();
  const double x44 = state.rho(3, 3).real();
  const double x23 = std::abs(state.rho(1, 2));
  const double x14 = std::abs(state.rho(0, 3));
  const double c1 = x23 - std::sqrt(std::max(0.0, x11 * x44));
  const double c2 = x14 - std::sqrt(std::max(0.0, x22 * x33));
  return 2.0 * std::max({0.0, c1, c2});
}

double concurrence(const XStateParams& x) {
  const double x11 = (1 + x.a + x.b + x.t_z) / 4.0;
  const double x22 = (1 + x.a - x.b - x.t_z) / 4.0;
  const double x33 = (1 - x.a + x.b - x.t_z) / 4.0;
  const double x44 = (1 - x.a - x.b + x.t_z) / 4.0;
  const double x14 = std::abs(x.t_x - x.t_y) / 4.0;
  const double x23 = std::abs(x.t_x + x.t_y) / 4.0;
  const double c1 = x23 - std::sqrt(std::max(0.0, x11 * x44));
  const double c2 = x14 - std::sqrt(std::max(0.0, x22 * x33));
  return 2.0 * std::max({0.0, c1, c2});
}

XStateParams canonicalize_x(const TwoQubitState& state) {
  check_x_pattern(state.rho);
  // Local z-rotations multiply X_14 and X_23 by independent phases, so both
  // can be made real and non-negative; diagonals (hence a, b, t_z) are
  // untouched and the concurrence is invariant.
  const double x14 = std::abs(state.rho(0, 3));
  const double x23 = std::abs(state.rho(1, 2));
  XStateParams x;
  x.a = (state.rho(0, 0) + state.rho(1, 1) - state.rho(2, 2) - state.rho(3, 3)).real();
  x.b = (state.rho(0, 0) - state.rho(1, 1) + state.rho(2, 2) - state.rho(3, 3)).real();
  x.t_z = (state.rho(0, 0) - state.rho(1, 1) - state.rho(2, 2) + state.rho(3, 3)).real();
  x.t_x = 2.0 * (x14 + x23);
  x.t_y = 2.0 * (x23 - x14);
  return x;
}

TwoQubitState psi_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 0.5) {
    throw ParameterOutOfRange("psi_alpha: alpha must lie in (0, 1/2]");
  }
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = std::sqrt(1.0 - alpha);
  psi(3) = std::sqrt(alpha);
  ComplexMatrix rho = (psi * psi.adjoint()).eval();
  return TwoQubitState::from_matrix(rho);
}

SingleQubitState rho_zero() {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  return SingleQubitState{rho};
}

SingleQubitState rho_one(double alpha) {
  if (!(alpha > 0.0) || alpha > 0.5) {
    throw ParameterOutOfRange("rho_one: alpha must lie in (0, 1/2]");
  }
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.0 - alpha;
  rho(1, 1) = alpha;
  return SingleQubitState{rho};
}

TwoQubitState depolarize(const TwoQubitState& state, double mu) {
  if (mu < 0.0 || mu > 1.0) {
    throw ParameterOutOfRange("depolarize: mu must lie in [0, 1]");
  }
  ComplexMatrix rho = (1.0 - mu) * state.rho + (mu / 4.0) * ComplexMatrix::Identity(4, 4);
  return TwoQubitState{rho};
}

SingleQubitState depolarize(const SingleQubitState& state, double mu) {
  if (mu < 0.0 || mu > 1.0) {
    throw ParameterOutOfRange("depolarize: mu must lie in [0, 1]");
  }
  ComplexMatrix rho = (1.0 - mu) * state.rho + (mu / 2.0) * ComplexMatrix::Identity(2, 2);
  return SingleQubitState{rho};
}

}  // namespace steerkit
