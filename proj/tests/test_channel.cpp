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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcm/channel.hpp"

using namespace qcm;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt1_2 = std::numbers::sqrt2 / 2.0;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ParamSet random_omega(std::mt19937_64& rng) {
  return {kPi * uniform01(rng), kPi * uniform01(rng), kPi * uniform01(rng),
          kPi * uniform01(rng), kPi * uniform01(rng), kPi * uniform01(rng)};
}

double map_diff(const AffineMap& a, const AffineMap& b) {
  return std::max({std::abs(a.eta_x - b.eta_x), std::abs(a.eta_y - b.eta_y),
                   std::abs(a.eta_z - b.eta_z),
                   std::abs(a.delta_z - b.delta_z)});
}

// Hand-written copy-A reduction of the machine acting on a pure input,
// transcribed term by term from the partial-trace worksheet; used as an
// independent oracle for reduce().
Matrix2 copy_a_oracle(const ParamSet& w, double theta, double phi) {
  const double ca = std::cos(0.5 * w.alpha), sa = std::sin(0.5 * w.alpha);
  const double cat = std::cos(0.5 * w.alpha_tilde);
  const double sat = std::sin(0.5 * w.alpha_tilde);
  const double cb = std::cos(0.5 * w.beta), sb = std::sin(0.5 * w.beta);
  const double cbt = std::cos(0.5 * w.beta_tilde);
  const double sbt = std::sin(0.5 * w.beta_tilde);
  const double cg = std::cos(0.5 * w.gamma), sg = std::sin(0.5 * w.gamma);
  const double cgt = std::cos(0.5 * w.gamma_tilde);
  const double sgt = std::sin(0.5 * w.gamma_tilde);
  const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
  const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);

  const double a11 = (ca * ca * cb * cb + sa * sa * cg * cg) * c2 +
                     (sat * sat * sgt * sgt + cat * cat * sbt * sbt) * s2;
  const double a22 = (ca * ca * sb * sb + sa * sa * sg * sg) * c2 +
                     (sat * sat * cgt * cgt + cat * cat * cbt * cbt) * s2;
  const Complex a12 =
      0.5 * std::sin(theta) *
      (std::exp(Complex(0, phi)) * (ca * sat * cb * cgt + sa * cat * cbt * cg) +
       std::exp(Complex(0, -phi)) *
           (ca * sat * sb * sgt + sa * cat * sbt * sg));

  Matrix2 m;
  m << a11, a12, std::conj(a12), a22;
  return m;
}

}  // namespace

TEST_CASE("reduce on product and entangled states") {
  // |uuu>: both copies are the up state
  Eigen::Matrix<Complex, 8, 1> v = Eigen::Matrix<Complex, 8, 1>::Zero();
  v(0) = 1.0;
  ThreeQubitDensity product;
  product.entries = v * v.adjoint();
  for (const Copy copy : {Copy::A, Copy::B}) {
    const Matrix2 m = reduce(product, copy).matrix();
    CHECK(std::abs(m(0, 0) - Complex(1)) <= 1e-15);
    CHECK(std::abs(m(1, 1)) <= 1e-15);
  }

  // maximally entangled pair on the copies, ancilla up: marginals are I/2
  Eigen::Matrix<Complex, 8, 1> bell = Eigen::Matrix<Complex, 8, 1>::Zero();
  bell(2) = std::sqrt(0.5);  // |ud u>
  bell(4) = std::sqrt(0.5);  // |du u>
  ThreeQubitDensity entangled;
  entangled.entries = bell * bell.adjoint();
  for (const Copy copy : {Copy::A, Copy::B}) {
    const Matrix2 m = reduce(entangled, copy).matrix();
    CHECK(std::abs(m(0, 0) - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(m(1, 1) - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(m(0, 1)) <= 1e-15);
  }
}

TEST_CASE("reduce matches the transcription oracle on random machines") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 200; ++i) {
    const ParamSet w = random_omega(rng);
    const double theta = kPi * uniform01(rng);
    const double phi = 2 * kPi * uniform01(rng);
    const DensityMatrix in = DensityMatrix::pure(state_vector({theta, phi}));
    const Matrix2 got = reduce(evolve(w, in), Copy::A).matrix();
    const Matrix2 want = copy_a_oracle(w, theta, phi);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("closed-form map of the fixed-angle machine family") {
  // alpha = 0, alpha_tilde = pi: copy A sees an amplitude damping map
  for (const double gt : {0.0, 0.4, 0.5 * kPi, 2.1, kPi}) {
    const ParamSet w{0.0, kPi, 0.0, 0.0, 0.5 * kPi, gt};
    const AffineMap a = affine_closed_form(w, Copy::A);
    const double c = std::cos(0.5 * gt), s = std::sin(0.5 * gt);
    CHECK(std::abs(a.eta_x - c) <= 1e-15);
    CHECK(std::abs(a.eta_y - c) <= 1e-15);
    CHECK(std::abs(a.eta_z - c * c) <= 1e-15);
    CHECK(std::abs(a.delta_z - s * s) <= 1e-15);
    // copy B swaps the roles of the two transverse scales
    const AffineMap b = affine_closed_form(w, Copy::B);
    CHECK(std::abs(b.eta_x - s) <= 1e-15);
    CHECK(std::abs(b.eta_z - s * s) <= 1e-15);
    CHECK(std::abs(b.delta_z - c * c) <= 1e-15);
  }
}

TEST_CASE("balanced shrinking machine contracts by 2/3") {
  const double alpha = 2.0 * std::acos(std::sqrt(2.0 / 3.0));
  const ParamSet w{alpha, alpha, 0.0, 0.0, 0.5 * kPi, 0.5 * kPi};
  for (const Copy copy : {Copy::A, Copy::B}) {
    const AffineMap m = affine_closed_form(w, copy);
    CHECK(std::abs(m.eta_x - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(m.eta_y - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(m.eta_z - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(m.delta_z) <= 1e-12);
  }
}

TEST_CASE("half-swap machine pulls the sphere toward the north pole") {
  const ParamSet w{0.0, kPi, 0.0, 0.0, 0.5 * kPi, 0.5 * kPi};
  const AffineMap m = affine_closed_form(w, Copy::A);
  CHECK(std::abs(m.eta_x - kSqrt1_2) <= 1e-15);
  CHECK(std::abs(m.eta_y - kSqrt1_2) <= 1e-15);
  CHECK(std::abs(m.eta_z - 0.5) <= 1e-15);
  CHECK(std::abs(m.delta_z - 0.5) <= 1e-15);
  const BlochVector north = m.apply({0, 0, 1});
  CHECK(std::abs(north.z - 1.0) <= 1e-15);
}

TEST_CASE("probe extraction: pass-through machine leaves copy A alone") {
  const ParamSet w{0.0, kPi, 0.0, 0.0, 0.5 * kPi, 0.0};
  const AffineMap m = affine_extract(w, Copy::A);
  CHECK(std::abs(m.eta_x - 1.0) <= 1e-12);
  CHECK(std::abs(m.eta_y - 1.0) <= 1e-12);
  CHECK(std::abs(m.eta_z - 1.0) <= 1e-12);
  CHECK(std::abs(m.delta_z) <= 1e-12);
}

TEST_CASE("probe extraction: all-zero machine dephases completely") {
  const AffineMap m = affine_extract({0, 0, 0, 0, 0, 0}, Copy::A);
  CHECK(std::abs(m.eta_x) <= 1e-12);
  CHECK(std::abs(m.eta_y) <= 1e-12);
  CHECK(std::abs(m.eta_z - 1.0) <= 1e-12);
  CHECK(std::abs(m.delta_z) <= 1e-12);
}

TEST_CASE("probe extraction agrees with the closed form everywhere") {
  std::mt19937_64 rng(53);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ParamSet w = random_omega(rng);
    for (const Copy copy : {Copy::A, Copy::B}) {
      worst = std::max(worst, map_diff(affine_extract(w, copy),
                                       affine_closed_form(w, copy)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("both copies coincide when the swap angles balance") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 200; ++i) {
    ParamSet w = random_omega(rng);
    w.gamma = 0.5 * kPi;
    w.gamma_tilde = 0.5 * kPi;
    CHECK(map_diff(affine_closed_form(w, Copy::A),
                   affine_closed_form(w, Copy::B)) <= 1e-12);
  }
}

TEST_CASE("induced maps keep the Bloch ball inside itself") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    const ParamSet w = random_omega(rng);
    const AffineMap m =
        affine_closed_form(w, uniform01(rng) < 0.5 ? Copy::A : Copy::B);
    const BlochVector axes[6] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                 {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    for (const auto& v : axes) CHECK(m.apply(v).norm() <= 1.0 + 1e-9);
    for (int s = 0; s < 10; ++s) {
      const double z = 2 * uniform01(rng) - 1;
      const double ph = 2 * kPi * uniform01(rng);
      const double sz = std::sqrt(1 - z * z);
      const BlochVector v{sz * std::cos(ph), sz * std::sin(ph), z};
      CHECK(m.apply(v).norm() <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("kraus_apply basics") {
  const KrausSet identity{{identity2()}};
  const DensityMatrix rho = density_from_bloch({0.3, -0.2, 0.4});
  CHECK((kraus_apply(identity, rho).matrix() - rho.matrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-15);

  // zero damping leaves every state alone
  CHECK((kraus_apply(kraus_ad(0.0), rho).matrix() - rho.matrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-15);

  // full damping sends the south pole to the north pole
  const DensityMatrix south = density_from_bloch({0, 0, -1});
  const BlochVector flipped =
      bloch_from_density(kraus_apply(kraus_ad(kPi), south));
  CHECK(std::abs(flipped.z - 1.0) <= 1e-12);

  KrausSet incomplete;
  incomplete.elements = {0.5 * identity2()};
  CHECK_THROWS_AS(kraus_apply(incomplete, rho), std::invalid_argument);
}

TEST_CASE("damping family matches its affine map") {
  for (int i = 0; i <= 16; ++i) {
    const double g = kPi * i / 16.0;
    const KrausSet k = kraus_ad(g);
    CHECK(completeness_defect(k) <= 1e-12);
    const GeneralAffine ga = affine_from_kraus(k);
    const double c = std::cos(0.5 * g);
    CHECK(std::abs(ga.linear(0, 0) - c) <= 1e-12);
    CHECK(std::abs(ga.linear(1, 1) - c) <= 1e-12);
    CHECK(std::abs(ga.linear(2, 2) - c * c) <= 1e-12);
    CHECK(std::abs(ga.shift(2) - (1 - c * c)) <= 1e-12);
    CHECK(std::abs(ga.linear(0, 1)) <= 1e-12);
    CHECK(std::abs(ga.shift(0)) <= 1e-12);
  }
}

TEST_CASE("generalized damping carries the tunable fixed point") {
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const double alpha = kPi * i / 8.0;
      const double g = kPi * j / 8.0;
      const KrausSet k = kraus_gad(alpha, g);
      CHECK(completeness_defect(k) <= 1e-12);
      const GeneralAffine ga = affine_from_kraus(k);
      const double c = std::cos(0.5 * g), s2 = 1 - c * c;
      CHECK(std::abs(ga.linear(0, 0) - c) <= 1e-12);
      CHECK(std::abs(ga.linear(2, 2) - c * c) <= 1e-12);
      CHECK(std::abs(ga.shift(2) - std::cos(alpha) * s2) <= 1e-12);
    }
  }
}

TEST_CASE("symmetric Pauli channel matches its affine map") {
  for (int i = 0; i <= 32; ++i) {
    const double alpha = kPi * i / 32.0;
    const KrausSet k = kraus_sp(alpha);
    CHECK(completeness_defect(k) <= 1e-12);
    const GeneralAffine ga = affine_from_kraus(k);
    CHECK(std::abs(ga.linear(0, 0) - kSqrt1_2 * std::sin(alpha)) <= 1e-12);
    CHECK(std::abs(ga.linear(1, 1) - kSqrt1_2 * std::sin(alpha)) <= 1e-12);
    CHECK(std::abs(ga.linear(2, 2) - 0.5 * (1 + std::cos(alpha))) <= 1e-12);
    CHECK(std::abs(ga.shift(2)) <= 1e-12);
  }
}

TEST_CASE("symmetric Pauli weights at the uniform-shrink point") {
  const double alpha = 2.0 * std::acos(std::sqrt(2.0 / 3.0));
  const KrausSet k = kraus_sp(alpha);
  // a = b there, each Pauli flip carrying probability 1/12, which is the
  // uniform 2/3 contraction
  const double a = std::abs(k.elements[1](0, 1));
  const double b = std::abs(k.elements[3](0, 0));
  CHECK(std::abs(a - b) <= 1e-12);
  CHECK(std::abs(a - 0.5 / std::sqrt(3.0)) <= 1e-12);
  const GeneralAffine ga = affine_from_kraus(k);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(ga.linear(i, i) - 2.0 / 3.0) <= 1e-12);
  }
}

TEST_CASE("symmetric Pauli identity weight never turns imaginary in the box") {
  // the radicand reaches its minimum 1/4 at the box edge; document the
  // observed validity of the whole parameter range
  for (int i = 0; i <= 64; ++i) {
    const double alpha = kPi * i / 64.0;
    CHECK_NOTHROW(kraus_sp(alpha));
    const double a = 0.5 * std::sin(0.5 * alpha);
    const double b = kSqrt1_2 * (std::cos(0.5 * alpha) -
                                 kSqrt1_2 * std::sin(0.5 * alpha));
    CHECK(1.0 - 2 * a * a - b * b >= 0.25 - 1e-12);
  }
}

TEST_CASE("deformed damping family matches its affine map") {
  for (int i = 0; i <= 32; ++i) {
    const double beta = kPi * i / 32.0;
    const KrausSet k = kraus_dad(beta);
    CHECK(completeness_defect(k) <= 1e-12);
    const GeneralAffine ga = affine_from_kraus(k);
    CHECK(std::abs(ga.linear(0, 0) - std::cos(0.25 * kPi - 0.5 * beta)) <=
          1e-12);
    CHECK(std::abs(ga.linear(1, 1) - std::cos(0.25 * kPi + 0.5 * beta)) <=
          1e-12);
    CHECK(std::abs(ga.linear(2, 2) - 0.5 * std::cos(beta)) <= 1e-12);
    CHECK(std::abs(ga.shift(2) - 0.5 * std::cos(beta)) <= 1e-12);
  }
}

TEST_CASE("deformed damping at beta = 0 is damping at the balanced angle") {
  const KrausSet dad = kraus_dad(0.0);
  const KrausSet ad = kraus_ad(0.5 * kPi);
  // same two operators with the element order swapped
  CHECK((dad.elements[0] - ad.elements[1]).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((dad.elements[1] - ad.elements[0]).cwiseAbs().maxCoeff() <= 1e-15);
}
