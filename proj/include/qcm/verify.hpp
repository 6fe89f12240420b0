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
#include <string>
#include <vector>

#include "qcm/design.hpp"

namespace qcm::verify {

enum class Suite { quick, full };

struct Check {
  std::string name;
  double worst = 0.0;  // worst observed defect
  double bound = 0.0;  // the check passes when worst <= bound
  bool pass = false;
};

// Runs the library's invariant checks. quick uses 100 random draws per
// check and a reduced optimizer grid; full uses 1000 draws and the whole
// grid. Deterministic for a given seed.
std::vector<Check> run_suite(Suite suite, std::uint64_t seed = 20260810);

bool all_pass(const std::vector<Check>& checks);

}  // namespace qcm::verify
