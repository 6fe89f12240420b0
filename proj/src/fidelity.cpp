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

#include "qcm/fidelity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFdStep = 1e-6;
constexpr double kEdge = 1e-7;

void check_moments(const EnsembleMoments& m) {
  if (std::abs(m.sum() - 1.0) > tol::validation) {
    throw std::invalid_argument("moment sum rule violated: nx2+ny2+nz2 != 1");
  }
}

}  // namespace

double single_copy_fidelity(const AffineMap& map, const StateAngles& angles) {
  const double st = std::sin(angles.theta), ct = std::cos(angles.theta);
  const double cp = std::cos(angles.phi), sp = std::sin(angles.phi);
  return 0.5 * (1.0 + map.eta_x * st * st * cp * cp +
                map.eta_y * st * st * sp * sp + map.eta_z * ct * ct +
                map.delta_z * ct);
}

double average_fidelity(const AffineMap& map, const EnsembleMoments& m) {
  check_moments(m);
  return 0.5 * (1.0 + map.eta_x * m.nx2_bar + map.eta_y * m.ny2_bar +
                map.eta_z * m.nz2_bar + map.delta_z * m.nz_bar);
}

double average_fidelity_oracle(const ParamSet& omega, const EnsembleSpec& spec,
                               Copy copy, int resolution) {
  const AffineMap map = affine_extract(omega, copy);
  double sum = 0.0, carry = 0.0;
  for (const auto& node : quadrature_nodes(spec, resolution)) {
    const double term =
        node.weight * single_copy_fidelity(map, {node.theta, node.phi});
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

FidelityReport objective(double p, const ParamSet& omega,
                         const EnsembleMoments& moments) {
  if (p < -tol::algebra || p > 1.0 + tol::algebra) {
    throw std::invalid_argument("asymmetry parameter p must lie in [0, 1]");
  }
  FidelityReport r;
  r.p = p;
  r.f_a = average_fidelity(affine_closed_form(omega, Copy::A), moments);
  r.f_b = average_fidelity(affine_closed_form(omega, Copy::B), moments);
  r.objective = p * r.f_a + (1.0 - p) * r.f_b;
  return r;
}

double stationarity_residual(double p, const ParamSet& omega,
                             const EnsembleMoments& moments) {
  const auto value = [&](const std::array<double, 6>& x) {
    return objective(p, ParamSet::from_array(x), moments).objective;
  };
  const std::array<double, 6> base = omega.to_array();
  double sq = 0.0;
  for (int j = 0; j < 6; ++j) {
    std::array<double, 6> plus = base, minus = base;
    plus[j] += kFdStep;
    minus[j] -= kFdStep;
    double g = (value(plus) - value(minus)) / (2.0 * kFdStep);
    // Maximization: at the lower edge only an increase is feasible, at the
    // upper edge only a decrease.
    if (base[j] <= kEdge) {
      g = std::max(g, 0.0);
    } else if (base[j] >= kPi - kEdge) {
      g = std::min(g, 0.0);
    }
    sq += g * g;
  }
  return std::sqrt(sq);
}

}  // namespace qcm
