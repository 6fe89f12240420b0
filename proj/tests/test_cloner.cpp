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

#include "qcm/cloner.hpp"

using namespace qcm;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ParamSet random_omega(std::mt19937_64& rng) {
  return {kPi * uniform01(rng), kPi * uniform01(rng), kPi * uniform01(rng),
          kPi * uniform01(rng), kPi * uniform01(rng), kPi * uniform01(rng)};
}

}  // namespace

TEST_CASE("all-zero angles produce the basis copier") {
  // substituting zeros into the column construction by hand: only the
  // cos terms survive, so |up> -> |uuu> and |down> -> |ddd>
  const Isometry iso = build_isometry({0, 0, 0, 0, 0, 0});
  for (int i = 0; i < 8; ++i) {
    const Complex up = iso.columns(i, 0);
    const Complex dn = iso.columns(i, 1);
    CHECK(std::abs(up - (i == 0 ? Complex(1) : Complex(0))) <= 1e-15);
    CHECK(std::abs(dn - (i == 7 ? Complex(1) : Complex(0))) <= 1e-15);
  }
}

TEST_CASE("eight amplitudes land on the documented basis slots") {
  // distinct angle values per slot make each amplitude unique
  const ParamSet w{0.3, 0.5, 0.7, 0.9, 1.1, 1.3};
  const Isometry iso = build_isometry(w);
  const double ca = std::cos(0.15), sa = std::sin(0.15);
  const double cat = std::cos(0.25), sat = std::sin(0.25);
  const double cb = std::cos(0.35), sb = std::sin(0.35);
  const double cbt = std::cos(0.45), sbt = std::sin(0.45);
  const double cg = std::cos(0.55), sg = std::sin(0.55);
  const double cgt = std::cos(0.65), sgt = std::sin(0.65);

  CHECK(std::abs(iso.columns(0, 0) - Complex(ca * cb)) <= 1e-15);   // uuu
  CHECK(std::abs(iso.columns(6, 0) - Complex(ca * sb)) <= 1e-15);   // ddu
  CHECK(std::abs(iso.columns(3, 0) - Complex(sa * cg)) <= 1e-15);   // udd
  CHECK(std::abs(iso.columns(5, 0) - Complex(sa * sg)) <= 1e-15);   // dud
  CHECK(std::abs(iso.columns(1, 1) - Complex(cat * sbt)) <= 1e-15); // uud
  CHECK(std::abs(iso.columns(7, 1) - Complex(cat * cbt)) <= 1e-15); // ddd
  CHECK(std::abs(iso.columns(2, 1) - Complex(sat * sgt)) <= 1e-15); // udu
  CHECK(std::abs(iso.columns(4, 1) - Complex(sat * cgt)) <= 1e-15); // duu
}

TEST_CASE("balanced shrinking machine spreads |up> over the triplet") {
  // cos(a/2) = sqrt(2/3), no cross terms, both swap angles at pi/2:
  // |up> -> sqrt(2/3)|uuu> + sqrt(1/6)(|udd> + |dud>)
  const double alpha = 2.0 * std::acos(std::sqrt(2.0 / 3.0));
  const Isometry iso =
      build_isometry({alpha, alpha, 0.0, 0.0, 0.5 * kPi, 0.5 * kPi});
  CHECK(std::abs(iso.columns(0, 0) - Complex(std::sqrt(2.0 / 3.0))) <= 1e-12);
  CHECK(std::abs(iso.columns(3, 0) - Complex(std::sqrt(1.0 / 6.0))) <= 1e-12);
  CHECK(std::abs(iso.columns(5, 0) - Complex(std::sqrt(1.0 / 6.0))) <= 1e-12);
  CHECK(std::abs(iso.columns(6, 0)) <= 1e-15);
  // mirrored structure on the |down> column
  CHECK(std::abs(iso.columns(7, 1) - Complex(std::sqrt(2.0 / 3.0))) <= 1e-12);
  CHECK(std::abs(iso.columns(2, 1) - Complex(std::sqrt(1.0 / 6.0))) <= 1e-12);
  CHECK(std::abs(iso.columns(4, 1) - Complex(std::sqrt(1.0 / 6.0))) <= 1e-12);
}

TEST_CASE("columns are orthonormal for random angles") {
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Isometry iso = build_isometry(random_omega(rng));
    const Eigen::Matrix2cd gram = iso.columns.adjoint() * iso.columns;
    worst = std::max(worst,
                     (gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("evolving a pure basis state gives the rank-one column state") {
  std::mt19937_64 rng(37);
  const ParamSet w = random_omega(rng);
  const Isometry iso = build_isometry(w);
  const ThreeQubitDensity out = evolve(w, density_from_bloch({0, 0, 1}));
  const Eigen::Matrix<Complex, 8, 8> want =
      iso.columns.col(0) * iso.columns.col(0).adjoint();
  CHECK((out.entries - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("maximally mixed input averages the two columns") {
  std::mt19937_64 rng(41);
  const ParamSet w = random_omega(rng);
  const Isometry iso = build_isometry(w);
  const ThreeQubitDensity out = evolve(w, DensityMatrix());
  const Eigen::Matrix<Complex, 8, 8> want =
      0.5 * (iso.columns.col(0) * iso.columns.col(0).adjoint()) +
      0.5 * (iso.columns.col(1) * iso.columns.col(1).adjoint());
  CHECK((out.entries - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("evolve equals the direct matrix product route") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const ParamSet w = random_omega(rng);
    const Isometry iso = build_isometry(w);
    const double z = 2 * uniform01(rng) - 1;
    const double phi = 2 * kPi * uniform01(rng);
    const double len = uniform01(rng);
    const double s = std::sqrt(1 - z * z);
    const DensityMatrix rho = density_from_bloch(
        {len * s * std::cos(phi), len * s * std::sin(phi), len * z});
    // oracle: V rho V^dagger with the full 2 -> 8 isometry matrix
    const Eigen::Matrix<Complex, 8, 8> want =
        iso.columns * rho.matrix() * iso.columns.adjoint();
    const ThreeQubitDensity got = evolve(iso, rho);
    CHECK((got.entries - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(got.entries.trace().real() - 1.0) <= 1e-12);
  }
}
