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

#include "qcm/cloner.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qcm {

Isometry build_isometry(const ParamSet& w) {
  const double ca = std::cos(0.5 * w.alpha), sa = std::sin(0.5 * w.alpha);
  const double cat = std::cos(0.5 * w.alpha_tilde);
  const double sat = std::sin(0.5 * w.alpha_tilde);
  const double cb = std::cos(0.5 * w.beta), sb = std::sin(0.5 * w.beta);
  const double cbt = std::cos(0.5 * w.beta_tilde);
  const double sbt = std::sin(0.5 * w.beta_tilde);
  const double cg = std::cos(0.5 * w.gamma), sg = std::sin(0.5 * w.gamma);
  const double cgt = std::cos(0.5 * w.gamma_tilde);
  const double sgt = std::sin(0.5 * w.gamma_tilde);

  Isometry iso;
  iso.columns.setZero();
  // |a b c> lives at index 4a + 2b + c.
  iso.columns(0, 0) = ca * cb;   // |uuu>
  iso.columns(6, 0) = ca * sb;   // |ddu>
  iso.columns(3, 0) = sa * cg;   // |udd>
  iso.columns(5, 0) = sa * sg;   // |dud>
  iso.columns(1, 1) = cat * sbt; // |uud>
  iso.columns(7, 1) = cat * cbt; // |ddd>
  iso.columns(2, 1) = sat * sgt; // |udu>
  iso.columns(4, 1) = sat * cgt; // |duu>
  return iso;
}

ThreeQubitDensity evolve(const Isometry& iso, const DensityMatrix& input) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es(input.matrix());
  ThreeQubitDensity out;
  out.entries.setZero();
  for (int i = 0; i < 2; ++i) {
    const Eigen::Matrix<Complex, 8, 1> psi =
        iso.columns * es.eigenvectors().col(i);
    out.entries += es.eigenvalues()(i) * (psi * psi.adjoint());
  }
  return out;
}

ThreeQubitDensity evolve(const ParamSet& omega, const DensityMatrix& input) {
  return evolve(build_isometry(omega), input);
}

}  // namespace qcm
