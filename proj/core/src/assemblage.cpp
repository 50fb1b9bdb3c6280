#include "steerkit/assemblage.hpp"

#include <cmath>

namespace steerkit {

namespace {

Eigen::Matrix2cd trace_out(const ComplexMatrix& m4, Party measured) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        if (measured == Party::A) {
          out(i, j) += m4(2 * k + i, 2 * k + j);
        } else {
          out(i, j) += m4(2 * i + k, 2 * j + k);
        }
      }
    }
  }
  return out;
}

}  // namespace

void Assemblage::validate() const {
  if (members.empty()) {
    throw InvalidState("assemblage has no settings");
  }
  Eigen::Matrix2cd total_first;
  for (std::size_t s = 0; s < members.size(); ++s) {
    for (int r = 0; r < 2; ++r) {
      ComplexMatrix m = members[s][r];
      if (hermiticity_defect(m) > tol::kHermitian) {
        throw InvalidState("assemblage member is not Hermitian");
      }
      if (min_eigenvalue(m) < tol::kPsd) {
        throw InvalidState("assemblage member is not positive semidefinite");
      }
    }
    const Eigen::Matrix2cd total = members[s][0] + members[s][1];
    if (s == 0) {
      total_first = total;
      if (std::abs(total.trace().real() - 1.0) > tol::kTrace ||
          std::abs(total.trace().imag()) > tol::kTrace) {
        throw InvalidState("assemblage totals must have unit trace");
      }
    } else if ((total - total_first).cwiseAbs().maxCoeff() > tol::kTrace) {
      throw InvalidState("assemblage totals differ between settings (signalling)");
    }
  }
}

Assemblage assemblage_from(const TwoQubitState& state,
                           const std::vector<Eigen::Vector3d>& directions,
                           Party measuring) {
  Assemblage out;
  out.members.reserve(directions.size());
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  for (const auto& dir : directions) {
    if (std::abs(dir.norm() - 1.0) > tol::kUnitDirection) {
      throw InvalidDirection("measurement directions must be unit vectors");
    }
    std::array<Eigen::Matrix2cd, 2> pair;
    for (int r = 0; r < 2; ++r) {
      const Eigen::Vector3d signed_dir = r == 0 ? dir : Eigen::Vector3d(-dir);
      const ComplexMatrix proj = bloch_to_matrix(signed_dir);
      const ComplexMatrix op =
          measuring == Party::A ? kron(proj, eye2) : kron(eye2, proj);
      pair[r] = trace_out(op * state.rho, measuring);
    }
    out.members.push_back(pair);
  }
  out.validate();
  return out;
}

AssemblageCoords coords_of(const Assemblage& assemblage) {
  AssemblageCoords coords;
  coords.plus.reserve(assemblage.members.size());
  for (const auto& pair : assemblage.members) {
    coords.plus.push_back(pauli_coords(pair[0]));
  }
  coords.total = pauli_coords(assemblage.members[0][0] + assemblage.members[0][1]);
  return coords;
}

AssemblageCoords formal_coords(const PauliForm& form,
                               const std::vector<Eigen::Vector3d>& directions) {
  AssemblageCoords coords;
  coords.plus.reserve(directions.size());
  for (const auto& dir : directions) {
    Eigen::Vector4d c;
    c(0) = 0.5 * (1.0 + form.a.dot(dir));
    c.tail<3>() = 0.5 * (form.b + form.T.transpose() * dir);
    coords.plus.push_back(c);
  }
  coords.total(0) = 1.0;
  coords.total.tail<3>() = form.b;
  return coords;
}

}  // namespace steerkit
