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

#include <array>

#include "qcm/bloch.hpp"

namespace qcm {

// The six machine angles, each in [0, pi]. Half-angle products cover every
// sign pattern of the induced map on that box; the optimizer searches it.
// The machine is expressed in the ensemble's canonical frame.
struct ParamSet {
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  double beta = 0.0;
  double beta_tilde = 0.0;
  double gamma = 0.0;
  double gamma_tilde = 0.0;

  std::array<double, 6> to_array() const {
    return {alpha, alpha_tilde, beta, beta_tilde, gamma, gamma_tilde};
  }
  static ParamSet from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
};

// Images of |up> and |down> in the copy-A x copy-B x ancilla space.
// Basis index of |a b c> is 4a + 2b + c with up = 0, down = 1.
struct Isometry {
  Eigen::Matrix<Complex, 8, 2> columns;
};

struct ThreeQubitDensity {
  Eigen::Matrix<Complex, 8, 8> entries;
};

// The machine action on the input basis:
//   U|up>   = cos(a/2) |u+>|up>_C  + sin(a/2)  |v+>|down>_C
//   U|down> = cos(at/2)|u->|down>_C + sin(at/2)|v->|up>_C
// with u+ = cos(b/2)|uu> + sin(b/2)|dd>, u- = sin(bt/2)|uu> + cos(bt/2)|dd>,
// v+ = cos(g/2)|ud> + sin(g/2)|du>,      v- = sin(gt/2)|ud> + cos(gt/2)|du>.
// Columns are orthonormal for every parameter choice.
Isometry build_isometry(const ParamSet& omega);

// Sends rho through the machine: decomposes the input spectrally and applies
// the isometry columns, yielding the three-qubit output state.
ThreeQubitDensity evolve(const Isometry& iso, const DensityMatrix& input);
ThreeQubitDensity evolve(const ParamSet& omega, const DensityMatrix& input);

}  // namespace qcm
