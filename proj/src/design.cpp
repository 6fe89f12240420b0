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

#include "qcm/design.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qcm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

using Vec6 = std::array<double, 6>;
using Objective1d = std::function<double(double)>;
using Objective6d = std::function<double(const Vec6&)>;

void check_p(double p) {
  if (p < -tol::algebra || p > 1.0 + tol::algebra) {
    throw std::invalid_argument("asymmetry parameter p must lie in [0, 1]");
  }
}

void check_theta(double theta_tilde) {
  if (theta_tilde < -tol::algebra || theta_tilde > kHalfPi + tol::algebra) {
    std::ostringstream os;
    os << "theta_tilde = " << theta_tilde
       << " outside [0, pi/2]; reflect the ensemble first";
    throw std::invalid_argument(os.str());
  }
}

// Generic assembly through the machine pipeline (used by the optimizer).
DesignResult finish(const ParamSet& omega, double p, const EnsembleMoments& m,
                    ChannelId id) {
  DesignResult r;
  r.omega = omega;
  r.map_a = affine_closed_form(omega, Copy::A);
  r.map_b = affine_closed_form(omega, Copy::B);
  r.f_a = average_fidelity(r.map_a, m);
  r.f_b = average_fidelity(r.map_b, m);
  r.residual = stationarity_residual(p, omega, m);
  r.channel_id = id;
  return r;
}

// Assembly from analytic map elements and fidelities. The closed-form
// designs know these exactly, which keeps corner cases (p = 0, 1, exact
// cloning) free of trigonometric round-off; the general pipeline above
// reproduces them within 1e-12 and the tests cross-check that.
DesignResult assemble(const ParamSet& omega, double residual_weight,
                      const EnsembleMoments& m, ChannelId id,
                      const AffineMap& map_a, const AffineMap& map_b,
                      double f_a, double f_b) {
  DesignResult r;
  r.omega = omega;
  r.map_a = map_a;
  r.map_b = map_b;
  r.f_a = f_a;
  r.f_b = f_b;
  r.residual = stationarity_residual(residual_weight, omega, m);
  r.channel_id = id;
  return r;
}

double golden_max(const Objective1d& f, double lo, double hi, double xtol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// Bracket on a uniform scan, then refine by golden section. Returns the
// argmax; robust to multimodal sections.
double line_max(const Objective1d& f, double lo, double hi, int grid,
                double xtol) {
  double best_x = lo, best_f = f(lo);
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + (hi - lo) * i / grid;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  const double h = (hi - lo) / grid;
  const double x = golden_max(f, std::max(lo, best_x - h),
                              std::min(hi, best_x + h), xtol);
  return f(x) >= best_f ? x : best_x;
}

// --- bounded 6-d maximization ----------------------------------------------

struct SearchMask {
  std::array<bool, 6> free_coord{true, true, true, true, true, true};
};

Vec6 clamp_box(Vec6 x) {
  for (double& v : x) v = std::clamp(v, 0.0, kPi);
  return x;
}

double coordinate_ascent(const Objective6d& f, Vec6& x, const SearchMask& mask,
                         int max_sweeps) {
  double fx = f(x);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double f_before = fx;
    for (int j = 0; j < 6; ++j) {
      if (!mask.free_coord[j]) continue;
      Vec6 y = x;
      const auto f1d = [&](double v) {
        y[j] = v;
        return f(y);
      };
      const double v = line_max(f1d, 0.0, kPi, 32, 1e-11);
      const double fv = f1d(v);
      if (fv > fx) {
        x[j] = v;
        fx = fv;
      }
    }
    if (fx - f_before < 1e-14) break;
  }
  return fx;
}

// Damped Newton ascent with a finite-difference Hessian, restricted to the
// inactive coordinates. Coordinate ascent parks edge-bound coordinates
// exactly on the box boundary; this stage finishes the interior directions
// to machine precision, which the multi-start agreement check relies on.
double newton_polish(const Objective6d& f, Vec6& x, const SearchMask& mask,
                     int iters) {
  constexpr double hg = 1e-7;  // gradient step
  constexpr double hh = 1e-4;  // Hessian step
  double fx = f(x);
  for (int it = 0; it < iters; ++it) {
    std::vector<int> active;
    Vec6 g{};
    for (int j = 0; j < 6; ++j) {
      if (!mask.free_coord[j]) continue;
      Vec6 plus = x, minus = x;
      plus[j] += hg;
      minus[j] -= hg;
      g[j] = (f(plus) - f(minus)) / (2.0 * hg);
      const bool pinned_low = x[j] <= 1e-12 && g[j] < 0.0;
      const bool pinned_high = x[j] >= kPi - 1e-12 && g[j] > 0.0;
      if (!pinned_low && !pinned_high) active.push_back(j);
    }
    const int k = static_cast<int>(active.size());
    if (k == 0) break;

    Eigen::VectorXd grad(k);
    double gnorm = 0.0;
    for (int a = 0; a < k; ++a) {
      grad(a) = g[active[a]];
      gnorm += grad(a) * grad(a);
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-12) break;

    Eigen::MatrixXd hess(k, k);
    for (int a = 0; a < k; ++a) {
      Vec6 plus = x, minus = x;
      plus[active[a]] += hh;
      minus[active[a]] -= hh;
      hess(a, a) = (f(plus) - 2.0 * fx + f(minus)) / (hh * hh);
      for (int b = a + 1; b < k; ++b) {
        Vec6 pp = x, pm = x, mp = x, mm = x;
        pp[active[a]] += hh;
        pp[active[b]] += hh;
        pm[active[a]] += hh;
        pm[active[b]] -= hh;
        mp[active[a]] -= hh;
        mp[active[b]] += hh;
        mm[active[a]] -= hh;
        mm[active[b]] -= hh;
        hess(a, b) = hess(b, a) =
            (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * hh * hh);
      }
    }

    // Levenberg damping keeps the step an ascent direction even where the
    // Hessian is singular along a flat optimum manifold.
    double lambda = 1e-9;
    bool improved = false;
    for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
      const Eigen::MatrixXd m =
          -hess + lambda * Eigen::MatrixXd::Identity(k, k);
      const Eigen::VectorXd step = m.ldlt().solve(grad);
      if (step.allFinite() && grad.dot(step) > 0.0) {
        Vec6 y = x;
        for (int a = 0; a < k; ++a) y[active[a]] += step(a);
        y = clamp_box(y);
        const double fy = f(y);
        if (fy > fx) {
          x = y;
          fx = fy;
          improved = true;
        }
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return fx;
}

struct Candidate {
  Vec6 x{};
  double value = 0.0;
};

Candidate multistart_max(const Objective6d& f, const SearchMask& mask,
                         const Vec6& pinned, const OptimizeBudget& budget) {
  std::mt19937_64 rng(budget.seed);
  const auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  std::vector<Candidate> finals;
  finals.reserve(budget.starts);
  for (int s = 0; s < budget.starts; ++s) {
    Vec6 x = pinned;
    for (int j = 0; j < 6; ++j) {
      if (mask.free_coord[j]) x[j] = s == 0 ? kHalfPi : kPi * uniform01();
    }
    Candidate c;
    c.value = coordinate_ascent(f, x, mask, budget.max_sweeps);
    c.value = std::max(c.value, newton_polish(f, x, mask,
                                              budget.polish_iters));
    c.x = x;
    finals.push_back(c);
  }

  std::sort(finals.begin(), finals.end(), [](const auto& a, const auto& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.x < b.x;
  });
  if (finals.size() >= 2 && finals[0].value - finals[1].value > 1e-8) {
    std::ostringstream os;
    os << "optimize_numeric did not converge: best two starts differ by "
       << finals[0].value - finals[1].value;
    throw std::runtime_error(os.str());
  }
  // Deterministic representative: lexicographically smallest among ties.
  Candidate best = finals[0];
  for (const auto& c : finals) {
    if (best.value - c.value <= 1e-12 && c.x < best.x) best = c;
  }
  best.value = f(best.x);
  return best;
}

}  // namespace

std::string_view to_string(ChannelId id) {
  switch (id) {
    case ChannelId::AD: return "AD";
    case ChannelId::GAD: return "GAD";
    case ChannelId::Depolarizing: return "Depolarizing";
    case ChannelId::SymmetricPauli: return "SymmetricPauli";
    case ChannelId::DAD: return "DAD";
    case ChannelId::Generic: return "Generic";
  }
  return "Generic";
}

DesignResult design_fixed_theta(double theta_tilde, double p) {
  check_theta(theta_tilde);
  check_p(p);
  const EnsembleMoments m = moments_closed_form(FixedTheta{theta_tilde});

  double gamma_tilde = kHalfPi;
  if (std::abs(p - 0.5) > tol::algebra) {
    const auto value = [&](double gt) {
      const ParamSet w{0.0, kPi, 0.0, 0.0, kHalfPi, gt};
      return objective(p, w, m).objective;
    };
    gamma_tilde = line_max(value, 0.0, kPi, 1024, 1e-10);
  }
  const ParamSet w{0.0, kPi, 0.0, 0.0, kHalfPi, gamma_tilde};

  const double c = std::cos(0.5 * gamma_tilde);
  const double s = std::sin(0.5 * gamma_tilde);
  const AffineMap map_a{c, c, c * c, s * s};
  const AffineMap map_b{s, s, s * s, c * c};
  return assemble(w, p, m, ChannelId::AD, map_a, map_b,
                  average_fidelity(map_a, m), average_fidelity(map_b, m));
}

DesignResult design_phase_covariant(double p) {
  check_p(p);
  const EnsembleMoments m = moments_closed_form(Equatorial{});
  // cos(g/2) : sin(g/2) = p : (1-p)
  const double n = std::hypot(p, 1.0 - p);
  const double c = p / n;
  const double s = (1.0 - p) / n;
  const double g = 2.0 * std::atan2(1.0 - p, p);
  const ParamSet w{kHalfPi, kHalfPi, 0.0, 0.0, g, g};
  // centered by the alpha = pi/2 choice
  const AffineMap map_a{c, c, c * c, 0.0};
  const AffineMap map_b{s, s, s * s, 0.0};
  return assemble(w, p, m, ChannelId::GAD, map_a, map_b, (n + p) / (2.0 * n),
                  (n + 1.0 - p) / (2.0 * n));
}

double universal_mixture_weight(double label) {
  return (2.0 - label) * label / (1.0 + 2.0 * label - 2.0 * label * label);
}

double universal_label_for_weight(double p) {
  check_p(p);
  return p / (1.0 - p + std::sqrt(1.0 - 3.0 * p + 3.0 * p * p));
}

DesignResult design_universal(double p) {
  check_p(p);
  const EnsembleMoments m = moments_closed_form(UniformSphere{});
  const double q = 1.0 - p + p * p;
  const double cos_half_alpha = 1.0 / std::sqrt(2.0 * q);
  const double sin_half_alpha =
      std::sqrt((2.0 * p * p - 2.0 * p + 1.0) / (2.0 * q));
  const double alpha = 2.0 * std::atan2(sin_half_alpha, cos_half_alpha);
  const double g = 2.0 * std::atan2(1.0 - p, p);
  const ParamSet w{alpha, alpha, 0.0, 0.0, g, g};

  const double eta_a = p / q;
  const double eta_b = (1.0 - p) / q;
  const AffineMap map_a{eta_a, eta_a, eta_a, 0.0};
  const AffineMap map_b{eta_b, eta_b, eta_b, 0.0};
  // single-rounding forms of (1 + eta)/2
  return assemble(w, universal_mixture_weight(p), m, ChannelId::Depolarizing,
                  map_a, map_b, (q + p) / (2.0 * q),
                  (q + 1.0 - p) / (2.0 * q));
}

DesignResult design_centered_symmetric(const EnsembleMoments& m) {
  if (std::abs(m.nx2_bar - m.ny2_bar) > tol::validation) {
    throw std::invalid_argument(
        "design_centered_symmetric requires nx2_bar == ny2_bar");
  }
  if (std::abs(m.nz_bar) > tol::validation) {
    throw std::invalid_argument(
        "design_centered_symmetric requires nz_bar == 0");
  }
  if (std::abs(m.sum() - 1.0) > tol::validation) {
    throw std::invalid_argument("moment sum rule violated");
  }
  // cos a : sin a = nz2 : sqrt(2) (1 - nz2)
  const double transverse = std::numbers::sqrt2 * (1.0 - m.nz2_bar);
  const double norm = std::hypot(m.nz2_bar, transverse);
  const double alpha = std::atan2(transverse, m.nz2_bar);
  const ParamSet w{alpha, alpha, 0.0, 0.0, kHalfPi, kHalfPi};

  const double eta_perp = (1.0 - m.nz2_bar) / norm;
  const double eta_z = 0.5 * (1.0 + m.nz2_bar / norm);
  const AffineMap map{eta_perp, eta_perp, eta_z, 0.0};
  const double f = 0.5 + 0.25 * (m.nz2_bar + norm);
  return assemble(w, 0.5, m, ChannelId::SymmetricPauli, map, map, f, f);
}

DesignResult design_mirror_pc(double theta_tilde) {
  check_theta(theta_tilde);
  return design_centered_symmetric(
      moments_closed_form(MirrorPhaseCovariant{theta_tilde}));
}

namespace {

// The two-state machine in terms of the half-turn complement
// u = pi/4 - beta/2: sin u solves the quadratic stationarity condition
// sin u = (-a + sqrt(a^2 + 8 t^2)) / (4 t) with a the transverse
// fluctuation and t = nz2 + nz, rationalized so the t -> 0 limit is exact.
struct PhaseDependentDesign {
  double beta = 0.0;
  double sin_u = 0.0;  // sin(pi/4 - beta/2)
  double cos_u = 1.0;
};

PhaseDependentDesign phase_dependent_beta(double a, double t) {
  if (t < -tol::algebra) {
    throw std::invalid_argument(
        "phase-dependent design requires nz2_bar + nz_bar >= 0");
  }
  PhaseDependentDesign d;
  d.sin_u =
      t <= 0.0 ? 0.0 : 2.0 * t / (a + std::hypot(a, std::sqrt(8.0) * t));
  d.sin_u = std::clamp(d.sin_u, 0.0, 1.0);
  const double u = std::asin(d.sin_u);
  d.cos_u = std::cos(u);
  d.beta = kHalfPi - 2.0 * u;
  return d;
}

DesignResult assemble_phase_dependent(const PhaseDependentDesign& d,
                                      const EnsembleMoments& m) {
  const ParamSet w{0.0, kPi, d.beta, 0.0, kHalfPi, kHalfPi};
  // both copies see the same deformed damping map
  const double half_cos_beta = d.sin_u * d.cos_u;  // cos(beta)/2
  const AffineMap map{d.cos_u, d.sin_u, half_cos_beta, half_cos_beta};
  const double f =
      0.5 * (1.0 + d.cos_u * (m.nx2_bar + d.sin_u * (m.nz2_bar + m.nz_bar)));
  return assemble(w, 0.5, m, ChannelId::DAD, map, map, f, f);
}

}  // namespace

DesignResult design_two_state(double s) {
  if (s < 0.0 || s >= 1.0) {
    throw std::invalid_argument("two-state overlap must lie in [0, 1)");
  }
  const EnsembleMoments m = moments_closed_form(TwoState{s, 0.5});
  return assemble_phase_dependent(
      phase_dependent_beta(m.nx2_bar, m.nz2_bar + m.nz_bar), m);
}

TwoStateWeightedResult design_two_state_weighted(double k) {
  if (k < -tol::algebra || k > 0.5 + tol::algebra) {
    throw std::invalid_argument("prior k must lie in [0, 1/2]");
  }
  k = std::clamp(k, 0.0, 0.5);
  const double q = std::sqrt(1.0 - 3.0 * k + 3.0 * k * k);
  const double r1x = std::sqrt(3.0) * (1.0 - k) / (2.0 * q);
  const double r1z = (3.0 * k - 1.0) / (2.0 * q);
  const double r2x = -std::sqrt(3.0) * k / (2.0 * q);
  const double r2z = (2.0 - 3.0 * k) / (2.0 * q);

  EnsembleMoments m;
  m.nz_bar = k * r1z + (1.0 - k) * r2z;
  m.nx2_bar = k * r1x * r1x + (1.0 - k) * r2x * r2x;
  m.ny2_bar = 0.0;
  m.nz2_bar = k * r1z * r1z + (1.0 - k) * r2z * r2z;

  const PhaseDependentDesign d =
      phase_dependent_beta(m.nx2_bar, m.nz2_bar + m.nz_bar);

  TwoStateWeightedResult out;
  out.design = assemble_phase_dependent(d, m);
  out.f_psi1 =
      0.5 * (1.0 + d.cos_u * (r1x * r1x + d.sin_u * (r1z * r1z + r1z)));
  out.f_psi2 =
      0.5 * (1.0 + d.cos_u * (r2x * r2x + d.sin_u * (r2z * r2z + r2z)));
  out.f_average = k * out.f_psi1 + (1.0 - k) * out.f_psi2;
  return out;
}

DesignResult optimize_numeric(const EnsembleMoments& moments, double p,
                              const OptimizeBudget& budget) {
  check_p(p);
  if (std::abs(moments.sum() - 1.0) > tol::validation) {
    throw std::invalid_argument("moment sum rule violated");
  }
  if (budget.starts < 2) {
    throw std::invalid_argument("optimizer needs at least two starts");
  }

  const auto value = [&](const Vec6& x) {
    return objective(p, ParamSet::from_array(x), moments).objective;
  };

  const bool pin_gamma = std::abs(p - 0.5) <= tol::algebra;
  const bool pin_beta =
      std::abs(moments.nx2_bar - moments.ny2_bar) <= tol::algebra;

  SearchMask mask;
  Vec6 pinned{kHalfPi, kHalfPi, kHalfPi, kHalfPi, kHalfPi, kHalfPi};
  if (pin_beta) {
    mask.free_coord[2] = mask.free_coord[3] = false;
    pinned[2] = pinned[3] = 0.0;
  }
  if (pin_gamma) {
    mask.free_coord[4] = mask.free_coord[5] = false;
    pinned[4] = pinned[5] = kHalfPi;
  }

  Candidate best = multistart_max(value, mask, pinned, budget);

  if (pin_gamma || pin_beta) {
    // The reductions are provably lossless; verify the free search agrees.
    const Candidate full =
        multistart_max(value, SearchMask{}, pinned, budget);
    if (std::abs(full.value - best.value) > 1e-6) {
      std::ostringstream os;
      os << "optimize_numeric: reduced and full-box searches disagree by "
         << full.value - best.value;
      throw std::runtime_error(os.str());
    }
  }

  return finish(ParamSet::from_array(best.x), p, moments, ChannelId::Generic);
}

DesignResult run_design(const DesignCase& design_case) {
  return std::visit(
      [](const auto& c) -> DesignResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, cases::FixedTheta>) {
          return design_fixed_theta(c.theta_tilde, c.p);
        } else if constexpr (std::is_same_v<T, cases::PhaseCovariant>) {
          return design_phase_covariant(c.p);
        } else if constexpr (std::is_same_v<T, cases::Universal>) {
          return design_universal(c.p);
        } else if constexpr (std::is_same_v<T, cases::CenteredSymmetric>) {
          return design_centered_symmetric(c.moments);
        } else if constexpr (std::is_same_v<T, cases::MirrorPC>) {
          return design_mirror_pc(c.theta_tilde);
        } else if constexpr (std::is_same_v<T, cases::TwoState>) {
          return design_two_state(c.s);
        } else if constexpr (std::is_same_v<T, cases::TwoStateWeighted>) {
          return design_two_state_weighted(c.k).design;
        } else {
          return optimize_numeric(c.moments, c.p);
        }
      },
      design_case);
}

Classification classify(const AffineMap& map_a, const AffineMap& map_b) {
  constexpr double kTol = 1e-10;
  Classification c;
  c.phase_independent = std::abs(map_a.eta_x - map_a.eta_y) <= kTol &&
                        std::abs(map_b.eta_x - map_b.eta_y) <= kTol;
  c.centered =
      std::abs(map_a.delta_z) <= kTol && std::abs(map_b.delta_z) <= kTol;
  return c;
}

}  // namespace qcm
