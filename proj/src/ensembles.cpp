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

#include "qcm/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qcm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Uniform double in [0, 1) built from the raw 64-bit stream; identical
// across standard libraries, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_theta_tilde(double theta_tilde) {
  if (theta_tilde < -tol::algebra || theta_tilde > 0.5 * kPi + tol::algebra) {
    std::ostringstream os;
    os << "theta_tilde = " << theta_tilde << " outside [0, pi/2]";
    throw std::invalid_argument(os.str());
  }
}

void check_two_state(const TwoState& ts) {
  if (ts.overlap < 0.0 || ts.overlap >= 1.0) {
    throw std::invalid_argument("two-state overlap must lie in [0, 1)");
  }
  if (ts.weight < 0.0 || ts.weight > 1.0) {
    throw std::invalid_argument("two-state weight must lie in [0, 1]");
  }
}

std::vector<WeightedAngles> normalized_states(const Discrete& d) {
  if (d.states.empty()) {
    throw std::invalid_argument("discrete ensemble must not be empty");
  }
  double wsum = 0.0;
  for (const auto& s : d.states) {
    if (s.weight <= 0.0) {
      throw std::invalid_argument("discrete weights must be positive");
    }
    wsum += s.weight;
  }
  if (std::abs(wsum - 1.0) > tol::validation) {
    throw std::invalid_argument("discrete weights must sum to 1");
  }
  std::vector<WeightedAngles> out = d.states;
  for (auto& s : out) s.weight /= wsum;
  return out;
}

EnsembleMoments moments_of_points(const std::vector<WeightedAngles>& pts) {
  KahanSum nz, nx2, ny2, nz2;
  for (const auto& p : pts) {
    const BlochVector r = bloch_from_angles(p.state);
    nz.add(p.weight * r.z);
    nx2.add(p.weight * r.x * r.x);
    ny2.add(p.weight * r.y * r.y);
    nz2.add(p.weight * r.z * r.z);
  }
  return {nz.sum, nx2.sum, ny2.sum, nz2.sum};
}

std::vector<QuadratureNode> azimuthal_ring(double theta, double ring_weight,
                                           int resolution) {
  std::vector<QuadratureNode> nodes;
  nodes.reserve(resolution);
  for (int j = 0; j < resolution; ++j) {
    nodes.push_back({theta, kTwoPi * j / resolution, ring_weight / resolution});
  }
  return nodes;
}

}  // namespace

std::string variant_name(const EnsembleSpec& spec) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedTheta>) return "fixed_theta";
        if constexpr (std::is_same_v<T, Equatorial>) return "equatorial";
        if constexpr (std::is_same_v<T, UniformSphere>) return "uniform_sphere";
        if constexpr (std::is_same_v<T, MirrorPhaseCovariant>)
          return "mirror_phase_covariant";
        if constexpr (std::is_same_v<T, TwoState>) return "two_state";
        if constexpr (std::is_same_v<T, Discrete>) return "discrete";
      },
      spec);
}

std::pair<WeightedAngles, WeightedAngles> two_state_support(
    const TwoState& ts) {
  check_two_state(ts);
  const double s = ts.overlap;
  const double k = ts.weight;
  const double cos_rel = 2.0 * s * s - 1.0;  // Bloch angle between the states
  const double msq =
      k * k + (1.0 - k) * (1.0 - k) + 2.0 * k * (1.0 - k) * cos_rel;
  const double mlen = std::sqrt(std::max(msq, 0.0));
  if (mlen < tol::algebra) {
    // Antipodal pair with equal weights. The canonical construction puts
    // the states in the equator as the overlap vanishes (the bisector is
    // orthogonal to both), so place them on the x axis.
    return {WeightedAngles{{0.5 * kPi, 0.0}, k},
            WeightedAngles{{0.5 * kPi, kPi}, 1.0 - k}};
  }
  const double r1z = std::clamp((k + (1.0 - k) * cos_rel) / mlen, -1.0, 1.0);
  const double r2z = std::clamp((k * cos_rel + (1.0 - k)) / mlen, -1.0, 1.0);
  // psi1 at phi = 0 (positive x), psi2 mirrored across the z axis.
  return {WeightedAngles{{std::acos(r1z), 0.0}, k},
          WeightedAngles{{std::acos(r2z), kPi}, 1.0 - k}};
}

std::vector<WeightedAngles> canonical_states(const Discrete& d) {
  const std::vector<WeightedAngles> in = normalized_states(d);

  std::vector<WeightedState> weighted;
  weighted.reserve(in.size());
  for (const auto& s : in) {
    weighted.push_back({DensityMatrix::pure(state_vector(s.state)), s.weight});
  }
  const PauliFrame frame = canonical_frame(weighted);

  std::vector<BlochVector> vecs;
  vecs.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    vecs.push_back(frame.bloch_of(weighted[i].rho));
  }

  // Rotate about z to kill the x-y cross moment and order nx2 >= ny2.
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const double w = in[i].weight;
    sxx += w * vecs[i].x * vecs[i].x;
    syy += w * vecs[i].y * vecs[i].y;
    sxy += w * vecs[i].x * vecs[i].y;
  }
  const double psi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double c = std::cos(psi), s = std::sin(psi);

  std::vector<WeightedAngles> out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const BlochVector r{c * vecs[i].x + s * vecs[i].y,
                        -s * vecs[i].x + c * vecs[i].y, vecs[i].z};
    out.push_back({angles_from_bloch(r), in[i].weight});
  }
  return out;
}

EnsembleMoments moments_closed_form(const EnsembleSpec& spec) {
  return std::visit(
      [](const auto& v) -> EnsembleMoments {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedTheta>) {
          check_theta_tilde(v.theta_tilde);
          const double ct = std::cos(v.theta_tilde);
          const double s2 = std::sin(v.theta_tilde) * std::sin(v.theta_tilde);
          return {ct, 0.5 * s2, 0.5 * s2, ct * ct};
        } else if constexpr (std::is_same_v<T, Equatorial>) {
          return {0.0, 0.5, 0.5, 0.0};
        } else if constexpr (std::is_same_v<T, UniformSphere>) {
          return {0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        } else if constexpr (std::is_same_v<T, MirrorPhaseCovariant>) {
          check_theta_tilde(v.theta_tilde);
          const double ct = std::cos(v.theta_tilde);
          const double s2 = std::sin(v.theta_tilde) * std::sin(v.theta_tilde);
          return {0.0, 0.5 * s2, 0.5 * s2, ct * ct};
        } else if constexpr (std::is_same_v<T, TwoState>) {
          const auto [p1, p2] = two_state_support(v);
          return moments_of_points({p1, p2});
        } else {
          return moments_of_points(canonical_states(v));
        }
      },
      spec);
}

std::vector<std::pair<double, double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<std::pair<double, double>> out(n);
  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double z1 = 0.0, pp = 0.0;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > eps);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    out[i] = {-z, w};
    out[n - 1 - i] = {z, w};
  }
  return out;
}

std::vector<QuadratureNode> quadrature_nodes(const EnsembleSpec& spec,
                                             int resolution) {
  if (resolution < 16) {
    throw std::invalid_argument("quadrature resolution must be >= 16");
  }
  return std::visit(
      [resolution](const auto& v) -> std::vector<QuadratureNode> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedTheta>) {
          check_theta_tilde(v.theta_tilde);
          return azimuthal_ring(v.theta_tilde, 1.0, resolution);
        } else if constexpr (std::is_same_v<T, Equatorial>) {
          return azimuthal_ring(0.5 * kPi, 1.0, resolution);
        } else if constexpr (std::is_same_v<T, UniformSphere>) {
          std::vector<QuadratureNode> nodes;
          nodes.reserve(static_cast<std::size_t>(resolution) * resolution);
          for (const auto& [u, w] : gauss_legendre(resolution)) {
            const double theta = std::acos(std::clamp(u, -1.0, 1.0));
            const auto ring = azimuthal_ring(theta, 0.5 * w, resolution);
            nodes.insert(nodes.end(), ring.begin(), ring.end());
          }
          return nodes;
        } else if constexpr (std::is_same_v<T, MirrorPhaseCovariant>) {
          check_theta_tilde(v.theta_tilde);
          auto nodes = azimuthal_ring(v.theta_tilde, 0.5, resolution);
          const auto mirror =
              azimuthal_ring(kPi - v.theta_tilde, 0.5, resolution);
          nodes.insert(nodes.end(), mirror.begin(), mirror.end());
          return nodes;
        } else if constexpr (std::is_same_v<T, TwoState>) {
          const auto [p1, p2] = two_state_support(v);
          return {{p1.state.theta, p1.state.phi, p1.weight},
                  {p2.state.theta, p2.state.phi, p2.weight}};
        } else {
          std::vector<QuadratureNode> nodes;
          for (const auto& s : canonical_states(v)) {
            nodes.push_back({s.state.theta, s.state.phi, s.weight});
          }
          return nodes;
        }
      },
      spec);
}

EnsembleMoments moments_quadrature(const EnsembleSpec& spec, int resolution) {
  KahanSum nz, nx2, ny2, nz2;
  for (const auto& node : quadrature_nodes(spec, resolution)) {
    const BlochVector r = bloch_from_angles({node.theta, node.phi});
    nz.add(node.weight * r.z);
    nx2.add(node.weight * r.x * r.x);
    ny2.add(node.weight * r.y * r.y);
    nz2.add(node.weight * r.z * r.z);
  }
  return {nz.sum, nx2.sum, ny2.sum, nz2.sum};
}

std::vector<StateAngles> sample(const EnsembleSpec& spec, int count,
                                std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<StateAngles> out;
  out.reserve(count);

  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedTheta>) {
          check_theta_tilde(v.theta_tilde);
          for (int i = 0; i < count; ++i) {
            out.push_back({v.theta_tilde, kTwoPi * uniform01(rng)});
          }
        } else if constexpr (std::is_same_v<T, Equatorial>) {
          for (int i = 0; i < count; ++i) {
            out.push_back({0.5 * kPi, kTwoPi * uniform01(rng)});
          }
        } else if constexpr (std::is_same_v<T, UniformSphere>) {
          for (int i = 0; i < count; ++i) {
            const double u = 2.0 * uniform01(rng) - 1.0;
            out.push_back({std::acos(u), kTwoPi * uniform01(rng)});
          }
        } else if constexpr (std::is_same_v<T, MirrorPhaseCovariant>) {
          check_theta_tilde(v.theta_tilde);
          for (int i = 0; i < count; ++i) {
            const double theta =
                uniform01(rng) < 0.5 ? v.theta_tilde : kPi - v.theta_tilde;
            out.push_back({theta, kTwoPi * uniform01(rng)});
          }
        } else if constexpr (std::is_same_v<T, TwoState>) {
          const auto [p1, p2] = two_state_support(v);
          for (int i = 0; i < count; ++i) {
            out.push_back(uniform01(rng) < p1.weight ? p1.state : p2.state);
          }
        } else {
          const auto states = canonical_states(v);
          std::vector<double> cumulative;
          cumulative.reserve(states.size());
          double acc = 0.0;
          for (const auto& s : states) {
            acc += s.weight;
            cumulative.push_back(acc);
          }
          cumulative.back() = 1.0;
          for (int i = 0; i < count; ++i) {
            const double u = uniform01(rng);
            const auto it =
                std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const std::size_t idx = std::min<std::size_t>(
                static_cast<std::size_t>(it - cumulative.begin()),
                states.size() - 1);
            out.push_back(states[idx].state);
          }
        }
      },
      spec);
  return out;
}

EnsembleSpec ensemble_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid ensemble JSON: ") +
                                e.what());
  }
  try {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "fixed_theta") {
      return FixedTheta{j.at("theta_tilde").get<double>()};
    }
    if (variant == "equatorial") return Equatorial{};
    if (variant == "uniform_sphere") return UniformSphere{};
    if (variant == "mirror_phase_covariant") {
      return MirrorPhaseCovariant{j.at("theta_tilde").get<double>()};
    }
    if (variant == "two_state") {
      TwoState ts;
      ts.overlap = j.at("overlap").get<double>();
      if (j.contains("weight")) ts.weight = j.at("weight").get<double>();
      return ts;
    }
    if (variant == "discrete") {
      Discrete d;
      for (const auto& s : j.at("states")) {
        d.states.push_back({{s.at("theta").get<double>(),
                             s.at("phi").get<double>()},
                            s.at("w").get<double>()});
      }
      return d;
    }
    throw std::invalid_argument("unknown ensemble variant: " + variant);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid ensemble JSON: ") +
                                e.what());
  }
}

std::string ensemble_to_json(const EnsembleSpec& spec) {
  nlohmann::json j;
  j["variant"] = variant_name(spec);
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedTheta> ||
                      std::is_same_v<T, MirrorPhaseCovariant>) {
          j["theta_tilde"] = v.theta_tilde;
        } else if constexpr (std::is_same_v<T, TwoState>) {
          j["overlap"] = v.overlap;
          j["weight"] = v.weight;
        } else if constexpr (std::is_same_v<T, Discrete>) {
          nlohmann::json states = nlohmann::json::array();
          for (const auto& s : v.states) {
            states.push_back({{"theta", s.state.theta},
                              {"phi", s.state.phi},
                              {"w", s.weight}});
          }
          j["states"] = states;
        }
      },
      spec);
  return j.dump();
}

}  // namespace qcm
