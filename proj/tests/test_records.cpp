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

#include <sstream>
#include <string>

#include "qcm/records.hpp"

using namespace qcm;

TEST_CASE("JSON records round trip losslessly") {
  const OutputRecord rec =
      make_record("universal", 0.3, design_universal(0.3));
  const OutputRecord back = record_from_json(to_json(rec));
  CHECK(back.case_id == rec.case_id);
  CHECK(back.p == rec.p);
  CHECK(back.omega.to_array() == rec.omega.to_array());
  CHECK(back.map_a.eta_x == rec.map_a.eta_x);
  CHECK(back.map_a.delta_z == rec.map_a.delta_z);
  CHECK(back.map_b.eta_y == rec.map_b.eta_y);
  CHECK(back.f_a == rec.f_a);
  CHECK(back.f_b == rec.f_b);
  CHECK(back.objective == rec.objective);
  CHECK(back.residual == rec.residual);
  CHECK(back.channel == rec.channel);
}

TEST_CASE("weighted designs carry per-state fidelities") {
  const auto res = design_two_state_weighted(0.25);
  OutputRecord rec = make_record("two-state-weighted", 0.5, res.design);
  rec.f_psi1 = res.f_psi1;
  rec.f_psi2 = res.f_psi2;
  const OutputRecord back = record_from_json(to_json(rec));
  REQUIRE(back.f_psi1.has_value());
  REQUIRE(back.f_psi2.has_value());
  CHECK(*back.f_psi1 == res.f_psi1);
  CHECK(*back.f_psi2 == res.f_psi2);
}

TEST_CASE("doubles serialize with 17 significant digits") {
  CHECK(format_double(5.0 / 6.0) == "0.83333333333333337");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  // round trip through text is exact
  const double values[] = {5.0 / 6.0, 0.9871392896287467, 1e-300, 0.0};
  for (const double v : values) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("CSV layout") {
  const OutputRecord rec =
      make_record("phase-covariant", 0.8, design_phase_covariant(0.8));
  const std::string header = csv_header();
  const std::string row = to_csv_row(rec);
  const auto count = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  CHECK(count(header) == count(row));
  CHECK(header.substr(0, 5) == "case,");
  CHECK(row.substr(0, 16) == "phase-covariant,");
  CHECK(row.find("GAD") != std::string::npos);
}

TEST_CASE("text rendering mentions the essentials") {
  const OutputRecord rec =
      make_record("two-state s=0.5", 0.5, design_two_state(0.5));
  const std::string text = to_text(rec);
  CHECK(text.find("two-state") != std::string::npos);
  CHECK(text.find("DAD") != std::string::npos);
  CHECK(text.find("F_A") != std::string::npos);
}
