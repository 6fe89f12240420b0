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

#include "qcm/channel.hpp"
#include "qcm/ensembles.hpp"

namespace qcm {

struct FidelityReport {
  double f_a = 0.0;
  double f_b = 0.0;
  double objective = 0.0;  // p * f_a + (1 - p) * f_b
  double p = 0.5;
};

// Overlap between the pure input at `angles` and the mapped copy:
//   F = (1 + ex sin^2 th cos^2 ph + ey sin^2 th sin^2 ph
//          + ez cos^2 th + dz cos th) / 2.
double single_copy_fidelity(const AffineMap& map, const StateAngles& angles);

// Ensemble average, fully determined by the four moments:
//   F = (1 + ex nx2 + ey ny2 + ez nz2 + dz nz) / 2.
// Requires the moment sum rule nx2 + ny2 + nz2 = 1.
double average_fidelity(const AffineMap& map, const EnsembleMoments& moments);

// Independent route: extracts the map by probing the simulated machine and
// integrates the single-copy fidelity over the ensemble's quadrature grid.
double average_fidelity_oracle(const ParamSet& omega, const EnsembleSpec& spec,
                               Copy copy, int resolution);

// Convex mixture p * F_A + (1-p) * F_B through the closed-form maps.
FidelityReport objective(double p, const ParamSet& omega,
                         const EnsembleMoments& moments);

// Euclidean norm of the objective gradient in the six angles, by central
// differences with step 1e-6. Components are projected onto feasible
// directions at the box edges 0 and pi, since several optimal settings sit
// exactly on them.
double stationarity_residual(double p, const ParamSet& omega,
                             const EnsembleMoments& moments);

}  // namespace qcm
