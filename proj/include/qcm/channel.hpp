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

#include <vector>

#include "qcm/bloch.hpp"
#include "qcm/cloner.hpp"

namespace qcm {

enum class Copy { A, B };

// Diagonal affine action on Bloch vectors: r -> (ex rx, ey ry, ez rz + dz).
// Every machine in this library induces a map of exactly this shape on both
// copies; the transverse shift components vanish.
struct AffineMap {
  double eta_x = 1.0;
  double eta_y = 1.0;
  double eta_z = 1.0;
  double delta_z = 0.0;

  BlochVector apply(const BlochVector& r) const {
    return {eta_x * r.x, eta_y * r.y, eta_z * r.z + delta_z};
  }
};

// Operator-sum representation. Complete when sum E^dag E = I.
struct KrausSet {
  std::vector<Matrix2> elements;
};

// Max |sum E^dag E - I| entry.
double completeness_defect(const KrausSet& k);
bool is_complete(const KrausSet& k, double tolerance = tol::algebra);

// Partial trace down to one copy: over (B, C) for copy A, over (A, C) for B.
DensityMatrix reduce(const ThreeQubitDensity& state, Copy copy);

// Closed-form map elements of the machine, using the copy-B substitution
// gamma -> pi - gamma, gamma_tilde -> pi - gamma_tilde.
AffineMap affine_closed_form(const ParamSet& omega, Copy copy);

// Tomographic extraction: evolves the probes (0,0,0), (0,0,+-1), (1,0,0),
// (0,1,0) through evolve + reduce and reads the map off the responses.
// Also verifies the off-diagonal responses and the transverse shift vanish;
// throws std::runtime_error beyond 1e-8 (that would be an implementation
// bug, the construction guarantees a diagonal map).
AffineMap affine_extract(const ParamSet& omega, Copy copy);

// sum E rho E^dag. Rejects incomplete sets.
DensityMatrix kraus_apply(const KrausSet& k, const DensityMatrix& rho);

// Amplitude damping; induces (cos g2, cos g2, cos^2 g2, sin^2 g2) with
// g2 = gamma_k/2.
KrausSet kraus_ad(double gamma_k);

// Generalized amplitude damping; induces
// (cos g2, cos g2, cos^2 g2, cos(alpha) sin^2 g2).
KrausSet kraus_gad(double alpha, double gamma_k);

// Symmetric Pauli channel with a = sin(alpha/2)/2 and
// b = (sqrt2/2)(cos(alpha/2) - (sqrt2/2) sin(alpha/2)); induces
// ((sqrt2/2) sin alpha, (sqrt2/2) sin alpha, (1 + cos alpha)/2, 0).
// Rejects parameters whose identity coefficient would be imaginary.
KrausSet kraus_sp(double alpha);

// Deformed amplitude damping; induces
// (cos(pi/4 - beta/2), cos(pi/4 + beta/2), cos(beta)/2, cos(beta)/2).
// At beta = 0 this is amplitude damping at gamma_k = pi/2 with the two
// elements swapped.
KrausSet kraus_dad(double beta);

// Probe-based extraction of the full (not necessarily diagonal) affine
// action of a channel; used to cross-check the kraus_* constructors.
struct GeneralAffine {
  Eigen::Matrix3d linear;
  Eigen::Vector3d shift;
};
GeneralAffine affine_from_kraus(const KrausSet& k);

}  // namespace qcm
