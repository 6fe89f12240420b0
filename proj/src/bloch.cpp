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

#include "qcm/bloch.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qcm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Ket2 fix_phase(const Ket2& v) {
  const int i = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
  const double mag = std::abs(v(i));
  if (mag == 0.0) return v;
  return v * (std::conj(v(i)) / mag);
}

}  // namespace

Matrix2 identity2() { return Matrix2::Identity(); }

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix() : m_(0.5 * Matrix2::Identity()) {}

DensityMatrix::DensityMatrix(const Matrix2& m) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::validation) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  const double trace_err = std::abs(m.trace() - Complex(1.0));
  if (trace_err > tol::validation) {
    std::ostringstream os;
    os << "density matrix trace differs from 1 by " << trace_err;
    throw std::invalid_argument(os.str());
  }
  const Matrix2 h = 0.5 * (m + m.adjoint());
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double rad = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
  if (0.5 * (a + d) - rad < -tol::validation) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  m_ = h / h.trace().real();
}

DensityMatrix DensityMatrix::pure(const Ket2& ket) {
  if (std::abs(ket.norm() - 1.0) > tol::validation) {
    throw std::invalid_argument("state vector must have unit norm");
  }
  DensityMatrix rho;
  const Matrix2 outer = ket * ket.adjoint();
  rho.m_ = 0.5 * (outer + outer.adjoint());
  return rho;
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
  const double a = m_(0, 0).real();
  const double d = m_(1, 1).real();
  const double mid = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), std::abs(m_(0, 1)));
  return {mid + rad, mid - rad};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
  const double n = r.norm();
  if (n > 1.0 + tol::validation) {
    std::ostringstream os;
    os << "Bloch vector length " << n << " exceeds 1 (unphysical)";
    throw std::invalid_argument(os.str());
  }
  Matrix2 m;
  m(0, 0) = 0.5 * (1.0 + r.z);
  m(0, 1) = Complex(0.5 * r.x, -0.5 * r.y);
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = 0.5 * (1.0 - r.z);
  return DensityMatrix(m);
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  const Matrix2& m = rho.matrix();
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

Ket2 state_vector(const StateAngles& angles) {
  Ket2 k;
  k(0) = std::cos(0.5 * angles.theta);
  k(1) = std::sin(0.5 * angles.theta) *
         std::exp(Complex(0.0, -angles.phi));
  return k;
}

BlochVector bloch_from_angles(const StateAngles& angles) {
  const double st = std::sin(angles.theta);
  return {st * std::cos(angles.phi), -st * std::sin(angles.phi),
          std::cos(angles.theta)};
}

StateAngles angles_from_bloch(const BlochVector& r) {
  const double n = r.norm();
  if (std::abs(n - 1.0) > tol::validation) {
    throw std::invalid_argument("angles_from_bloch requires a unit vector");
  }
  const double z = std::clamp(r.z / n, -1.0, 1.0);
  double phi = 0.0;
  if (r.x != 0.0 || r.y != 0.0) {
    phi = std::atan2(-r.y, r.x);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi -= kTwoPi;
  }
  return {std::acos(z), phi};
}

PauliFrame PauliFrame::computational() { return PauliFrame{}; }

Matrix2 PauliFrame::sigma_x() const {
  return basis_up * basis_down.adjoint() + basis_down * basis_up.adjoint();
}

Matrix2 PauliFrame::sigma_y() const {
  return Complex(0, -1) * basis_up * basis_down.adjoint() +
         Complex(0, 1) * basis_down * basis_up.adjoint();
}

Matrix2 PauliFrame::sigma_z() const {
  return basis_up * basis_up.adjoint() - basis_down * basis_down.adjoint();
}

BlochVector PauliFrame::bloch_of(const DensityMatrix& rho) const {
  const Matrix2& m = rho.matrix();
  return {(sigma_x() * m).trace().real(), (sigma_y() * m).trace().real(),
          (sigma_z() * m).trace().real()};
}

PauliFrame canonical_frame(const std::vector<WeightedState>& ensemble) {
  if (ensemble.empty()) {
    throw std::invalid_argument("canonical_frame: empty ensemble");
  }
  double wsum = 0.0;
  Matrix2 rho_s = Matrix2::Zero();
  for (const auto& [rho, w] : ensemble) {
    if (w <= 0.0) {
      throw std::invalid_argument("canonical_frame: weights must be positive");
    }
    wsum += w;
    rho_s += w * rho.matrix();
  }
  if (std::abs(wsum - 1.0) > tol::algebra) {
    throw std::invalid_argument("canonical_frame: weights must sum to 1");
  }

  Eigen::SelfAdjointEigenSolver<Matrix2> es(rho_s);
  const double lambda = es.eigenvalues()(1) - es.eigenvalues()(0);
  if (lambda <= tol::algebra) {
    PauliFrame frame = PauliFrame::computational();
    frame.lambda = 0.0;
    frame.degenerate = true;
    return frame;
  }

  PauliFrame frame;
  frame.basis_up = fix_phase(es.eigenvectors().col(1));
  frame.basis_down = fix_phase(es.eigenvectors().col(0));
  frame.lambda = lambda;
  frame.degenerate = false;
  return frame;
}

PauliFrame canonical_frame(
    const std::vector<std::pair<StateAngles, double>>& ensemble) {
  std::vector<WeightedState> states;
  states.reserve(ensemble.size());
  for (const auto& [angles, w] : ensemble) {
    states.push_back({DensityMatrix::pure(state_vector(angles)), w});
  }
  return canonical_frame(states);
}

}  // namespace qcm
