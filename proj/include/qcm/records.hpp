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

#include <optional>
#include <string>

#include "qcm/design.hpp"

namespace qcm {

// Machine-readable result of one design run. Floats are serialized with 17
// significant digits so the JSON and CSV encodings round-trip losslessly.
struct OutputRecord {
  std::string case_id;
  double p = 0.5;
  ParamSet omega;
  AffineMap map_a;
  AffineMap map_b;
  double f_a = 0.0;
  double f_b = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  std::string channel;
  // Present for weighted two-state designs only.
  std::optional<double> f_psi1;
  std::optional<double> f_psi2;
};

OutputRecord make_record(const std::string& case_id, double p,
                         const DesignResult& d);

// %.17g rendering used in every machine-readable format.
std::string format_double(double v);

std::string to_json(const OutputRecord& rec);
OutputRecord record_from_json(const std::string& text);

std::string csv_header();
std::string to_csv_row(const OutputRecord& rec);

std::string to_text(const OutputRecord& rec);

}  // namespace qcm
