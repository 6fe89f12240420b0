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

#include "qcm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qcm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt1_2 = std::numbers::sqrt2 / 2.0;

BlochVector channel_response(const KrausSet& k, const BlochVector& r) {
  return bloch_from_density(kraus_apply(k, density_from_bloch(r)));
}

}  // namespace

double completeness_defect(const KrausSet& k) {
  Matrix2 acc = Matrix2::Zero();
  for (const auto& e : k.elements) acc += e.adjoint() * e;
  return (acc - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

bool is_complete(const KrausSet& k, double tolerance) {
  return completeness_defect(k) <= tolerance;
}

DensityMatrix reduce(const ThreeQubitDensity& state, Copy copy) {
  Matrix2 out = Matrix2::Zero();
  if (copy == Copy::A) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int b = 0; b < 2; ++b) {
          for (int c = 0; c < 2; ++c) {
            out(i, j) += state.entries(4 * i + 2 * b + c, 4 * j + 2 * b + c);
          }
        }
      }
    }
  } else {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int a = 0; a < 2; ++a) {
          for (int c = 0; c < 2; ++c) {
            out(i, j) += state.entries(4 * a + 2 * i + c, 4 * a + 2 * j + c);
          }
        }
      }
    }
  }
  return DensityMatrix(out);
}

AffineMap affine_closed_form(const ParamSet& w, Copy copy) {
  const double g = copy == Copy::A ? w.gamma : kPi - w.gamma;
  const double gt = copy == Copy::A ? w.gamma_tilde : kPi - w.gamma_tilde;

  const double ca = std::cos(0.5 * w.alpha), sa = std::sin(0.5 * w.alpha);
  const double cat = std::cos(0.5 * w.alpha_tilde);
  const double sat = std::sin(0.5 * w.alpha_tilde);
  const double cb = std::cos(0.5 * w.beta), sb = std::sin(0.5 * w.beta);
  const double cbt = std::cos(0.5 * w.beta_tilde);
  const double sbt = std::sin(0.5 * w.beta_tilde);
  const double cg = std::cos(0.5 * g), sg = std::sin(0.5 * g);
  const double cgt = std::cos(0.5 * gt), sgt = std::sin(0.5 * gt);

  AffineMap m;
  m.eta_x = ca * sat * (cb * cgt + sb * sgt) + sa * cat * (cbt * cg + sbt * sg);
  m.eta_y = ca * sat * (cb * cgt - sb * sgt) + sa * cat * (cbt * cg - sbt * sg);
  const double up_part = ca * ca * std::cos(w.beta) + sa * sa * std::cos(g);
  const double down_part =
      cat * cat * std::cos(w.beta_tilde) + sat * sat * std::cos(gt);
  m.eta_z = 0.5 * (up_part + down_part);
  m.delta_z = 0.5 * (up_part - down_part);
  return m;
}

AffineMap affine_extract(const ParamSet& omega, Copy copy) {
  const Isometry iso = build_isometry(omega);
  const auto respond = [&](const BlochVector& r) {
    return bloch_from_density(reduce(evolve(iso, density_from_bloch(r)), copy));
  };

  const BlochVector center = respond({0.0, 0.0, 0.0});
  const BlochVector up = respond({0.0, 0.0, 1.0});
  const BlochVector down = respond({0.0, 0.0, -1.0});
  const BlochVector px = respond({1.0, 0.0, 0.0});
  const BlochVector py = respond({0.0, 1.0, 0.0});

  AffineMap m;
  m.eta_x = px.x - center.x;
  m.eta_y = py.y - center.y;
  m.eta_z = 0.5 * (up.z - down.z);
  m.delta_z = 0.5 * (up.z + down.z);

  const double off = std::max({
      std::abs(center.x), std::abs(center.y),          // transverse shift
      std::abs(px.y - center.y), std::abs(px.z - center.z),
      std::abs(py.x - center.x), std::abs(py.z - center.z),
      std::abs(0.5 * (up.x - down.x)), std::abs(0.5 * (up.y - down.y)),
      std::abs(center.z - m.delta_z),                  // redundancy probe
  });
  if (off > 1e-8) {
    std::ostringstream os;
    os << "affine_extract: off-diagonal response " << off
       << " exceeds 1e-8; the induced map must be diagonal";
    throw std::runtime_error(os.str());
  }
  return m;
}

DensityMatrix kraus_apply(const KrausSet& k, const DensityMatrix& rho) {
  if (!is_complete(k, tol::validation)) {
    throw std::invalid_argument("kraus_apply: set is not trace preserving");
  }
  Matrix2 out = Matrix2::Zero();
  for (const auto& e : k.elements) out += e * rho.matrix() * e.adjoint();
  return DensityMatrix(out);
}

KrausSet kraus_ad(double gamma_k) {
  const double c = std::cos(0.5 * gamma_k), s = std::sin(0.5 * gamma_k);
  Matrix2 e0, e1;
  e0 << 1.0, 0.0, 0.0, c;
  e1 << 0.0, s, 0.0, 0.0;
  return {{e0, e1}};
}

KrausSet kraus_gad(double alpha, double gamma_k) {
  const double ca = std::cos(0.5 * alpha), sa = std::sin(0.5 * alpha);
  const double c = std::cos(0.5 * gamma_k), s = std::sin(0.5 * gamma_k);
  Matrix2 e0, e1, e2, e3;
  e0 << 1.0, 0.0, 0.0, c;
  e1 << 0.0, s, 0.0, 0.0;
  e2 << c, 0.0, 0.0, 1.0;
  e3 << 0.0, 0.0, s, 0.0;
  return {{ca * e0, ca * e1, sa * e2, sa * e3}};
}

KrausSet kraus_sp(double alpha) {
  const double a = 0.5 * std::sin(0.5 * alpha);
  const double b =
      kSqrt1_2 * (std::cos(0.5 * alpha) - kSqrt1_2 * std::sin(0.5 * alpha));
  const double radicand = 1.0 - 2.0 * a * a - b * b;
  if (radicand < -tol::algebra) {
    std::ostringstream os;
    os << "kraus_sp: identity coefficient imaginary at alpha = " << alpha;
    throw std::invalid_argument(os.str());
  }
  const double e0 = std::sqrt(std::max(radicand, 0.0));
  return {{e0 * identity2(), a * pauli_x(), a * pauli_y(), b * pauli_z()}};
}

KrausSet kraus_dad(double beta) {
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  Matrix2 e0, e1;
  e0 << 0.0, kSqrt1_2, s, 0.0;
  e1 << c, 0.0, 0.0, kSqrt1_2;
  return {{e0, e1}};
}

GeneralAffine affine_from_kraus(const KrausSet& k) {
  GeneralAffine g;
  const BlochVector shift = channel_response(k, {0.0, 0.0, 0.0});
  g.shift << shift.x, shift.y, shift.z;
  const BlochVector axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    const BlochVector out = channel_response(k, axes[j]);
    g.linear(0, j) = out.x - shift.x;
    g.linear(1, j) = out.y - shift.y;
    g.linear(2, j) = out.z - shift.z;
  }
  return g;
}

}  // namespace qcm
