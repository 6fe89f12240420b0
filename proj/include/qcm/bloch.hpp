// Copyright 2026 The qcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace qcm {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Ket2 = Eigen::Vector2cd;

namespace tol {
// Algebraic identities produced by the library hold to this precision.
inline constexpr double algebra = 1e-12;
// Inputs are rejected when they violate a contract by more than this.
inline constexpr double validation = 1e-9;
}  // namespace tol

Matrix2 identity2();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

// Real 3-vector r with rho = (I + r.sigma)/2. Pure states sit on |r| = 1.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

// Polar/azimuthal coordinates of a pure qubit state.
//
// The amplitude convention is (cos(theta/2), sin(theta/2) * e^{-i phi}).
// Paired with the standard Pauli matrices this means phi runs clockwise
// around +z: the Bloch vector is (sin th cos ph, -sin th sin ph, cos th).
// Flipping the amplitude phase to e^{+i phi} negates the y component.
// Every quantity in this library is even in y, so the orientation choice
// is observable only through raw Bloch coordinates.
struct StateAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2*pi)
};

// 2x2 Hermitian, unit-trace, positive-semidefinite matrix.
// The validating constructor rejects inputs breaking any of those by more
// than tol::validation, then canonicalizes (symmetrizes, renormalizes).
class DensityMatrix {
 public:
  // Maximally mixed state.
  DensityMatrix();
  explicit DensityMatrix(const Matrix2& m);

  static DensityMatrix pure(const Ket2& ket);

  const Matrix2& matrix() const { return m_; }
  // Eigenvalues in descending order (closed form).
  std::array<double, 2> eigenvalues() const;

 private:
  Matrix2 m_;
};

DensityMatrix density_from_bloch(const BlochVector& r);
BlochVector bloch_from_density(const DensityMatrix& rho);

// Amplitudes (cos(theta/2), sin(theta/2) e^{-i phi}).
Ket2 state_vector(const StateAngles& angles);

// Unit Bloch vector of state_vector(angles); see the StateAngles note.
BlochVector bloch_from_angles(const StateAngles& angles);

// Inverse of bloch_from_angles for (near-)unit vectors.
StateAngles angles_from_bloch(const BlochVector& r);

// An orthonormal qubit basis in which some ensemble average state is
// diagonal: rho_S = (I + lambda sigma_z)/2 with lambda >= 0, so the
// ensemble's transverse first moments vanish.
struct PauliFrame {
  Ket2 basis_up{1.0, 0.0};
  Ket2 basis_down{0.0, 1.0};
  double lambda = 0.0;
  bool degenerate = false;

  static PauliFrame computational();

  Matrix2 sigma_x() const;
  Matrix2 sigma_y() const;
  Matrix2 sigma_z() const;

  // Bloch components of rho measured along this frame's axes.
  BlochVector bloch_of(const DensityMatrix& rho) const;
};

struct WeightedState {
  DensityMatrix rho;
  double weight = 0.0;
};

// Diagonalizes the weighted average state and returns the frame spanned by
// its eigenvectors, basis_up belonging to the larger eigenvalue. Weights
// must be positive and sum to 1. Eigenvector phases are fixed by making the
// largest-magnitude component real positive. A degenerate average (lambda
// ~ 0) keeps the computational frame and sets the degenerate flag.
PauliFrame canonical_frame(const std::vector<WeightedState>& ensemble);
PauliFrame canonical_frame(
    const std::vector<std::pair<StateAngles, double>>& ensemble);

}  // namespace qcm
