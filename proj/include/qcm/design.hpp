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

#include <cstdint>
#include <string_view>
#include <variant>

#include "qcm/fidelity.hpp"

namespace qcm {

// Which named channel family realizes the designed copy maps.
enum class ChannelId {
  AD,              // amplitude damping
  GAD,             // generalized amplitude damping
  Depolarizing,    // uniform shrink
  SymmetricPauli,  // identity + Pauli flips, x/y weights equal
  DAD,             // deformed amplitude damping
  Generic,
};

std::string_view to_string(ChannelId id);

struct DesignResult {
  ParamSet omega;
  AffineMap map_a;
  AffineMap map_b;
  double f_a = 0.0;
  double f_b = 0.0;
  double residual = 0.0;  // projected stationarity of the designing objective
  ChannelId channel_id = ChannelId::Generic;
};

// Two-state designs with unequal priors report per-state fidelities on top
// of the machine itself; the machine serves both copies symmetrically.
struct TwoStateWeightedResult {
  DesignResult design;
  double f_psi1 = 0.0;
  double f_psi2 = 0.0;
  double f_average = 0.0;
};

struct Classification {
  bool phase_independent = false;  // eta_x == eta_y on both copies
  bool centered = false;           // delta_z == 0 on both copies
};

// Tagged description of one design problem, dispatchable via run_design.
namespace cases {
struct FixedTheta {
  double theta_tilde = 0.0;
  double p = 0.5;
};
struct PhaseCovariant {
  double p = 0.5;
};
struct Universal {
  double p = 0.5;
};
struct CenteredSymmetric {
  EnsembleMoments moments;
};
struct MirrorPC {
  double theta_tilde = 0.0;
};
struct TwoState {
  double s = 0.5;
};
struct TwoStateWeighted {
  double k = 0.5;
};
struct GenericNumeric {
  EnsembleMoments moments;
  double p = 0.5;
};
}  // namespace cases

using DesignCase =
    std::variant<cases::FixedTheta, cases::PhaseCovariant, cases::Universal,
                 cases::CenteredSymmetric, cases::MirrorPC, cases::TwoState,
                 cases::TwoStateWeighted, cases::GenericNumeric>;

DesignResult run_design(const DesignCase& design_case);

// --- closed-form designs ---------------------------------------------------

// Ensemble with fixed polar angle theta_tilde in [0, pi/2], uniform azimuth.
// Settings: alpha = beta = beta_tilde = 0, alpha_tilde = pi; gamma_tilde is
// chosen by directly maximizing the p-mixture over [0, pi] (golden-section
// after a bracketing scan); the symmetric case returns gamma_tilde = pi/2.
// Copies realize amplitude damping.
DesignResult design_fixed_theta(double theta_tilde, double p);

// Equatorial ensemble. gamma = gamma_tilde with
// cos(gamma/2) = p / sqrt(p^2 + (1-p)^2); alpha is a free direction and is
// fixed at pi/2 so the copies are centered GAD maps.
DesignResult design_phase_covariant(double p);

// Uniformly distributed pure states. Both copies are depolarizing channels
// with eta_A = p/(1-p+p^2), eta_B = (1-p)/(1-p+p^2); the pair saturates the
// no-cloning inequality for every p.
//
// The label p parametrizes the optimal trade-off frontier. The machine at
// label t is the stationary point of the convex mixture taken at weight
// universal_mixture_weight(t), which equals t only at the symmetric point
// 1/2; the reported residual certifies stationarity at that weight. To
// maximize the mixture for a given weight p, build the design at label
// universal_label_for_weight(p).
DesignResult design_universal(double p);

// Weight of the convex mixture maximized by the frontier machine at the
// given label: w(t) = (2t - t^2) / (1 + 2t - 2t^2).
double universal_mixture_weight(double label);

// Inverse of universal_mixture_weight:
// t(p) = p / (1 - p + sqrt(1 - 3p + 3p^2)).
double universal_label_for_weight(double p);

// Symmetric design for moments with nx2 == ny2 and nz = 0. Realizes a
// symmetric Pauli channel.
DesignResult design_centered_symmetric(const EnsembleMoments& moments);

// Polar angle theta_tilde or pi - theta_tilde with equal probability.
DesignResult design_mirror_pc(double theta_tilde);

// Two equally likely pure states with overlap s in [0, 1). Realizes a
// deformed amplitude damping; beta_tilde is a free direction, fixed at 0.
// The beta equation is evaluated in a rationalized form that is exact in
// the orthogonal limit s -> 0.
DesignResult design_two_state(double s);

// Two states with overlap 1/2 and priors (k, 1-k), k in [0, 1/2].
TwoStateWeightedResult design_two_state_weighted(double k);

// --- numerical rediscovery --------------------------------------------------

struct OptimizeBudget {
  int starts = 48;       // deterministic multi-start count (>= 32)
  int max_sweeps = 80;   // coordinate-ascent sweeps per start
  int polish_iters = 60; // projected-gradient polish iterations
  std::uint64_t seed = 20260810;
};

// Maximizes p*F_A + (1-p)*F_B over the parameter box by seeded multi-start
// coordinate ascent plus projected-gradient refinement. When p = 1/2 the
// gamma pair is pinned at pi/2, and when nx2 == ny2 the beta pair is pinned
// at 0; a full-box search is then run as well and must agree within 1e-6.
// Throws std::runtime_error when the two best starts disagree by more than
// 1e-8 after the budget is exhausted.
DesignResult optimize_numeric(const EnsembleMoments& moments, double p,
                              const OptimizeBudget& budget = {});

Classification classify(const AffineMap& map_a, const AffineMap& map_b);

}  // namespace qcm
