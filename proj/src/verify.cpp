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

#include "qcm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qcm::verify {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ParamSet random_omega(std::mt19937_64& rng) {
  ParamSet w;
  w.alpha = kPi * uniform01(rng);
  w.alpha_tilde = kPi * uniform01(rng);
  w.beta = kPi * uniform01(rng);
  w.beta_tilde = kPi * uniform01(rng);
  w.gamma = kPi * uniform01(rng);
  w.gamma_tilde = kPi * uniform01(rng);
  return w;
}

BlochVector random_unit(std::mt19937_64& rng) {
  const double z = 2.0 * uniform01(rng) - 1.0;
  const double phi = 2.0 * kPi * uniform01(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

BlochVector random_mixed(std::mt19937_64& rng) {
  BlochVector r = random_unit(rng);
  const double len = uniform01(rng);
  return {len * r.x, len * r.y, len * r.z};
}

// Valid random moments: a point on the fluctuation simplex plus a feasible
// averaged length.
EnsembleMoments random_moments(std::mt19937_64& rng, bool equal_xy) {
  double a = uniform01(rng), b = uniform01(rng);
  if (a > b) std::swap(a, b);
  double nx2 = a, ny2 = b - a, nz2 = 1.0 - b;
  if (equal_xy) {
    const double t = 0.5 * (nx2 + ny2);
    nx2 = ny2 = t;
  }
  const double u = 2.0 * uniform01(rng) - 1.0;
  return {u * std::sqrt(nz2), nx2, ny2, nz2};
}

double map_diff(const AffineMap& a, const AffineMap& b) {
  return std::max({std::abs(a.eta_x - b.eta_x), std::abs(a.eta_y - b.eta_y),
                   std::abs(a.eta_z - b.eta_z),
                   std::abs(a.delta_z - b.delta_z)});
}

double general_diff(const GeneralAffine& g, const AffineMap& m) {
  double worst = 0.0;
  const double diag[3] = {m.eta_x, m.eta_y, m.eta_z};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double want = i == j ? diag[i] : 0.0;
      worst = std::max(worst, std::abs(g.linear(i, j) - want));
    }
  }
  worst = std::max({worst, std::abs(g.shift(0)), std::abs(g.shift(1)),
                    std::abs(g.shift(2) - m.delta_z)});
  return worst;
}

struct Runner {
  std::vector<Check> checks;
  std::uint64_t seed;

  void record(const std::string& name, double worst, double bound) {
    checks.push_back({name, worst, bound, worst <= bound});
  }
};

void check_bloch(Runner& r, int n) {
  std::mt19937_64 rng(r.seed + 1);
  double worst_rt = 0.0;
  for (int i = 0; i < n; ++i) {
    const BlochVector v = random_mixed(rng);
    const BlochVector back = bloch_from_density(density_from_bloch(v));
    worst_rt = std::max({worst_rt, std::abs(back.x - v.x),
                         std::abs(back.y - v.y), std::abs(back.z - v.z)});
  }
  r.record("bloch: density round trip", worst_rt, 1e-12);

  double worst_unit = 0.0;
  for (int i = 0; i < n; ++i) {
    const StateAngles a{kPi * uniform01(rng), 2.0 * kPi * uniform01(rng)};
    const DensityMatrix rho = DensityMatrix::pure(state_vector(a));
    worst_unit =
        std::max(worst_unit, std::abs(bloch_from_density(rho).norm() - 1.0));
    const BlochVector direct = bloch_from_angles(a);
    const BlochVector via = bloch_from_density(rho);
    worst_unit = std::max({worst_unit, std::abs(direct.x - via.x),
                           std::abs(direct.y - via.y),
                           std::abs(direct.z - via.z)});
  }
  r.record("bloch: pure states on the unit sphere", worst_unit, 1e-12);
}

void check_frames(Runner& r, int n) {
  std::mt19937_64 rng(r.seed + 2);
  double worst_avg = 0.0;
  double worst_algebra = 0.0;
  for (int i = 0; i < n; ++i) {
    const int count = 2 + static_cast<int>(uniform01(rng) * 4);
    std::vector<WeightedState> ensemble;
    std::vector<double> weights(count);
    double wsum = 0.0;
    for (auto& w : weights) {
      w = 0.05 + uniform01(rng);
      wsum += w;
    }
    for (int s = 0; s < count; ++s) {
      const StateAngles a{kPi * uniform01(rng), 2.0 * kPi * uniform01(rng)};
      ensemble.push_back(
          {DensityMatrix::pure(state_vector(a)), weights[s] / wsum});
    }
    const PauliFrame frame = canonical_frame(ensemble);
    double nx = 0.0, ny = 0.0;
    for (const auto& ws : ensemble) {
      const BlochVector v = frame.bloch_of(ws.rho);
      nx += ws.weight * v.x;
      ny += ws.weight * v.y;
    }
    if (!frame.degenerate) {
      worst_avg = std::max({worst_avg, std::abs(nx), std::abs(ny)});
    }

    const Matrix2 sx = frame.sigma_x(), sy = frame.sigma_y(),
                  sz = frame.sigma_z();
    const Matrix2 id = identity2();
    const Complex i1(0.0, 1.0);
    worst_algebra = std::max(
        {worst_algebra,
         (sx * sx - id).cwiseAbs().maxCoeff(),
         (sy * sy - id).cwiseAbs().maxCoeff(),
         (sz * sz - id).cwiseAbs().maxCoeff(),
         (sx * sy - i1 * sz).cwiseAbs().maxCoeff(),
         (sy * sz - i1 * sx).cwiseAbs().maxCoeff(),
         (sz * sx - i1 * sy).cwiseAbs().maxCoeff()});
  }
  r.record("bloch: canonical frame kills transverse averages", worst_avg,
           1e-10);
  r.record("bloch: Pauli algebra in rotated frames", worst_algebra, 1e-12);
}

void check_isometry(Runner& r, int n) {
  std::mt19937_64 rng(r.seed + 3);
  double worst_ortho = 0.0;
  for (int i = 0; i < n; ++i) {
    const Isometry iso = build_isometry(random_omega(rng));
    const Eigen::Matrix2cd gram = iso.columns.adjoint() * iso.columns;
    worst_ortho = std::max(
        worst_ortho, (gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff());
  }
  r.record("cloner: isometry columns orthonormal", worst_ortho, 1e-12);

  double worst_trace = 0.0, worst_linear = 0.0;
  for (int i = 0; i < std::max(10, n / 10); ++i) {
    const ParamSet w = random_omega(rng);
    const Isometry iso = build_isometry(w);
    const DensityMatrix rho1 = density_from_bloch(random_mixed(rng));
    const DensityMatrix rho2 = density_from_bloch(random_mixed(rng));
    const double p = uniform01(rng);
    const Matrix2 mix =
        p * rho1.matrix() + (1.0 - p) * rho2.matrix();
    const ThreeQubitDensity lhs = evolve(iso, DensityMatrix(mix));
    const Eigen::Matrix<Complex, 8, 8> rhs =
        p * evolve(iso, rho1).entries + (1.0 - p) * evolve(iso, rho2).entries;
    worst_trace =
        std::max(worst_trace, std::abs(lhs.entries.trace().real() - 1.0));
    worst_linear =
        std::max(worst_linear, (lhs.entries - rhs).cwiseAbs().maxCoeff());
  }
  r.record("cloner: evolution preserves trace", worst_trace, 1e-12);
  r.record("cloner: evolution is linear", worst_linear, 1e-12);
}

void check_extraction(Runner& r, int n) {
  std::mt19937_64 rng(r.seed + 4);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const ParamSet w = random_omega(rng);
    for (const Copy copy : {Copy::A, Copy::B}) {
      worst = std::max(
          worst, map_diff(affine_extract(w, copy), affine_closed_form(w, copy)));
    }
  }
  r.record("channel: probe extraction matches closed form", worst, 1e-12);

  double worst_sym = 0.0;
  for (int i = 0; i < std::max(10, n / 10); ++i) {
    ParamSet w = random_omega(rng);
    w.gamma = 0.5 * kPi;
    w.gamma_tilde = 0.5 * kPi;
    worst_sym = std::max(worst_sym, map_diff(affine_closed_form(w, Copy::A),
                                             affine_closed_form(w, Copy::B)));
  }
  r.record("channel: balanced machines serve both copies equally", worst_sym,
           1e-12);

  double worst_ball = 0.0;
  for (int i = 0; i < std::max(10, n / 10); ++i) {
    const ParamSet w = random_omega(rng);
    for (const Copy copy : {Copy::A, Copy::B}) {
      const AffineMap m = affine_closed_form(w, copy);
      const BlochVector axes[6] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                   {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
      for (const auto& v : axes) {
        worst_ball = std::max(worst_ball, m.apply(v).norm() - 1.0);
      }
      for (int s = 0; s < 100; ++s) {
        worst_ball =
            std::max(worst_ball, m.apply(random_unit(rng)).norm() - 1.0);
      }
    }
  }
  r.record("channel: maps keep the Bloch ball inside itself", worst_ball,
           1e-9);
}

void check_kraus(Runner& r) {
  double worst_complete = 0.0, worst_affine = 0.0;
  const auto scan = [&](const KrausSet& k, const AffineMap& want) {
    worst_complete = std::max(worst_complete, completeness_defect(k));
    worst_affine = std::max(worst_affine, general_diff(affine_from_kraus(k), want));
  };
  for (int i = 0; i <= 32; ++i) {
    const double g = kPi * i / 32.0;
    const double c = std::cos(0.5 * g), s2 = std::sin(0.5 * g) * std::sin(0.5 * g);
    scan(kraus_ad(g), {c, c, c * c, s2});
    scan(kraus_sp(g), {0.5 * std::numbers::sqrt2 * std::sin(g),
                       0.5 * std::numbers::sqrt2 * std::sin(g),
                       0.5 * (1.0 + std::cos(g)), 0.0});
    scan(kraus_dad(g), {std::cos(0.25 * kPi - 0.5 * g),
                        std::cos(0.25 * kPi + 0.5 * g), 0.5 * std::cos(g),
                        0.5 * std::cos(g)});
    for (int j = 0; j <= 8; ++j) {
      const double alpha = kPi * j / 8.0;
      scan(kraus_gad(alpha, g), {c, c, c * c, std::cos(alpha) * s2});
    }
  }
  r.record("channel: named Kraus families trace preserving", worst_complete,
           1e-12);
  r.record("channel: named Kraus families match their maps", worst_affine,
           1e-12);
}

void check_ensembles(Runner& r) {
  const std::vector<EnsembleSpec> specs = {
      FixedTheta{0.3}, FixedTheta{0.5 * kPi}, Equatorial{}, UniformSphere{},
      MirrorPhaseCovariant{0.7}, TwoState{0.5, 0.5}, TwoState{0.3, 0.2},
      Discrete{{{{0.4, 0.3}, 0.25}, {{1.2, 2.1}, 0.35}, {{2.0, 5.0}, 0.4}}}};
  double worst_quad = 0.0, worst_sum = 0.0;
  for (const auto& spec : specs) {
    const EnsembleMoments cf = moments_closed_form(spec);
    const EnsembleMoments q = moments_quadrature(spec, 64);
    worst_quad = std::max({worst_quad, std::abs(cf.nz_bar - q.nz_bar),
                           std::abs(cf.nx2_bar - q.nx2_bar),
                           std::abs(cf.ny2_bar - q.ny2_bar),
                           std::abs(cf.nz2_bar - q.nz2_bar)});
    worst_sum = std::max(worst_sum, std::abs(cf.sum() - 1.0));
  }
  r.record("ensembles: quadrature matches closed form", worst_quad, 1e-9);
  r.record("ensembles: moment sum rule", worst_sum, 1e-10);
}

void check_fidelity(Runner& r, int n) {
  std::mt19937_64 rng(r.seed + 5);
  const std::vector<EnsembleSpec> specs = {
      FixedTheta{0.4}, Equatorial{}, UniformSphere{},
      MirrorPhaseCovariant{0.9}, TwoState{0.5, 0.5},
      Discrete{{{{0.3, 0.1}, 0.5}, {{1.1, 4.0}, 0.5}}}};
  double worst = 0.0;
  for (int i = 0; i < std::max(10, n / 10); ++i) {
    const ParamSet w = random_omega(rng);
    for (const auto& spec : specs) {
      const EnsembleMoments m = moments_closed_form(spec);
      for (const Copy copy : {Copy::A, Copy::B}) {
        const double direct =
            average_fidelity(affine_closed_form(w, copy), m);
        const double oracle = average_fidelity_oracle(w, spec, copy, 64);
        worst = std::max(worst, std::abs(direct - oracle));
      }
    }
  }
  r.record("fidelity: quadrature oracle matches moment formula", worst, 1e-9);

  double worst_phase = 0.0;
  for (int i = 0; i < std::max(10, n / 10); ++i) {
    ParamSet w = random_omega(rng);
    w.beta = 0.0;
    w.beta_tilde = 0.0;  // phase-independent family
    const AffineMap m = affine_closed_form(w, Copy::A);
    const double theta = kPi * uniform01(rng);
    const double f0 = single_copy_fidelity(m, {theta, 0.0});
    for (int j = 1; j < 16; ++j) {
      const double f = single_copy_fidelity(m, {theta, 2.0 * kPi * j / 16});
      worst_phase = std::max(worst_phase, std::abs(f - f0));
    }
  }
  r.record("fidelity: equal transverse scales make F phase independent",
           worst_phase, 1e-12);
}

void check_reductions(Runner& r, int n) {
  std::mt19937_64 rng(r.seed + 6);
  const int draws = std::max(10, n / 10);

  double worst_gamma = 0.0;
  for (int i = 0; i < draws; ++i) {
    ParamSet w = random_omega(rng);
    w.gamma = 0.5 * kPi;
    w.gamma_tilde = 0.5 * kPi;
    const EnsembleMoments m = random_moments(rng, false);
    const auto val = [&](double g, double gt) {
      ParamSet v = w;
      v.gamma = g;
      v.gamma_tilde = gt;
      return objective(0.5, v, m).objective;
    };
    const double h = 1e-6;
    const double dg =
        (val(w.gamma + h, w.gamma_tilde) - val(w.gamma - h, w.gamma_tilde)) /
        (2.0 * h);
    const double dgt =
        (val(w.gamma, w.gamma_tilde + h) - val(w.gamma, w.gamma_tilde - h)) /
        (2.0 * h);
    worst_gamma = std::max(worst_gamma, std::hypot(dg, dgt));
  }
  r.record("fidelity: symmetric mixtures are stationary at gamma = pi/2",
           worst_gamma, 1e-8);

  double worst_beta = 0.0;
  for (int i = 0; i < draws; ++i) {
    ParamSet w = random_omega(rng);
    w.beta = 0.0;
    w.beta_tilde = 0.0;
    const EnsembleMoments m = random_moments(rng, true);
    const double p = uniform01(rng);
    const auto val = [&](double b, double bt) {
      ParamSet v = w;
      v.beta = b;
      v.beta_tilde = bt;
      return objective(p, v, m).objective;
    };
    const double h = 1e-6;
    // Central difference through the box edge, projected onto the inward
    // direction (only increases are feasible at the lower bound).
    const double db = std::max(0.0, (val(h, 0.0) - val(-h, 0.0)) / (2.0 * h));
    const double dbt = std::max(0.0, (val(0.0, h) - val(0.0, -h)) / (2.0 * h));
    worst_beta = std::max(worst_beta, std::hypot(db, dbt));
  }
  r.record("fidelity: equal transverse moments are stationary at beta = 0",
           worst_beta, 1e-8);
}

void check_designs(Runner& r, bool full) {
  double worst_res = 0.0;
  const auto note = [&](const DesignResult& d) {
    worst_res = std::max(worst_res, d.residual);
  };
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    note(design_universal(p));
    note(design_phase_covariant(p));
  }
  for (const double th : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
    note(design_fixed_theta(th, 0.5));
    note(design_fixed_theta(th, 0.8));
    note(design_mirror_pc(th));
  }
  for (const double s : {0.1, 0.3, 0.5, 0.7, 0.9}) note(design_two_state(s));
  for (const double k : {0.0, 0.1, 0.25, 0.4, 0.5}) {
    note(design_two_state_weighted(k).design);
  }
  r.record("design: closed forms are stationary points", worst_res, 1e-6);

  double worst_nc = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const DesignResult d = design_universal(i / 10.0);
    const double ia = 1.0 - d.f_a, ib = 1.0 - d.f_b;
    worst_nc = std::max(
        worst_nc, std::abs(std::sqrt(ia * ib) - (0.5 - ia - ib)));
  }
  r.record("design: universal family saturates the no-cloning bound",
           worst_nc, 1e-9);

  double worst_mono = 0.0;
  double prev_fa = 0.0, prev_fb = 2.0;
  for (int i = 0; i <= 20; ++i) {
    const DesignResult d = design_universal(i / 20.0);
    if (i > 0) {
      worst_mono = std::max({worst_mono, prev_fa - d.f_a, d.f_b - prev_fb});
    }
    prev_fa = d.f_a;
    prev_fb = d.f_b;
  }
  r.record("design: trade-off frontier is monotone in p", worst_mono, 1e-12);

  double worst_opt = 0.0;
  const auto compare = [&](const EnsembleMoments& m, double p, double want) {
    const DesignResult d = optimize_numeric(m, p);
    const double got = p * d.f_a + (1.0 - p) * d.f_b;
    worst_opt = std::max(worst_opt, std::abs(got - want));
  };
  if (full) {
    for (int i = 0; i <= 10; i += 2) {
      const double p = i / 10.0;
      // mixture optimum sits at the frontier tangency label
      const DesignResult u = design_universal(universal_label_for_weight(p));
      compare(moments_closed_form(UniformSphere{}), p,
              p * u.f_a + (1.0 - p) * u.f_b);
    }
    const DesignResult ts = design_two_state(0.5);
    compare(moments_closed_form(TwoState{0.5, 0.5}), 0.5, ts.f_a);
    const DesignResult mpc = design_mirror_pc(0.7);
    compare(moments_closed_form(MirrorPhaseCovariant{0.7}), 0.5, mpc.f_a);
  } else {
    const DesignResult u = design_universal(0.5);
    compare(moments_closed_form(UniformSphere{}), 0.5, u.f_a);
    const DesignResult pc = design_phase_covariant(0.8);
    compare(moments_closed_form(Equatorial{}), 0.8,
            0.8 * pc.f_a + 0.2 * pc.f_b);
  }
  r.record("design: numeric optimizer rediscovers closed forms", worst_opt,
           1e-6);
}

}  // namespace

std::vector<Check> run_suite(Suite suite, std::uint64_t seed) {
  const int n = suite == Suite::full ? 1000 : 100;
  Runner r;
  r.seed = seed;
  check_bloch(r, n);
  check_frames(r, n);
  check_isometry(r, n);
  check_extraction(r, n);
  check_kraus(r);
  check_ensembles(r);
  check_fidelity(r, n);
  check_reductions(r, n);
  check_designs(r, suite == Suite::full);
  return r.checks;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

}  // namespace qcm::verify
