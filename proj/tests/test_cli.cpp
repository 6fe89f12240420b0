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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcm/records.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

std::string binary_path() {
  const char* env = std::getenv("QCM_BIN");
  REQUIRE_MESSAGE(env != nullptr, "QCM_BIN must point at the qcm binary");
  return env;
}

RunResult run(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
    res.stdout_text.append(buf, n);
    if (n < sizeof buf) break;
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/qcm_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("design universal emits the balanced fidelity as JSON") {
  const RunResult r = run("design --case universal --p 0.5 --format json");
  REQUIRE(r.exit_code == 0);
  const qcm::OutputRecord rec = qcm::record_from_json(r.stdout_text);
  CHECK(std::abs(rec.f_a - 5.0 / 6.0) <= 1e-12);
  CHECK(std::abs(rec.f_b - 5.0 / 6.0) <= 1e-12);
  CHECK(rec.channel == "Depolarizing");
  // 17-significant-digit rendering
  CHECK(r.stdout_text.find("0.83333333333333337") != std::string::npos);
}

TEST_CASE("design two-state hits the published number") {
  const RunResult r = run("design --case two-state --overlap 0.5 --format json");
  REQUIRE(r.exit_code == 0);
  const qcm::OutputRecord rec = qcm::record_from_json(r.stdout_text);
  CHECK(std::abs(rec.f_a - 0.987139) <= 1e-6);
  CHECK(rec.channel == "DAD");
}

TEST_CASE("design fixed-theta at zero angle clones exactly") {
  const RunResult r =
      run("design --case fixed-theta --theta 0 --p 0.3 --format json");
  REQUIRE(r.exit_code == 0);
  const qcm::OutputRecord rec = qcm::record_from_json(r.stdout_text);
  CHECK(std::abs(rec.f_a - 1.0) <= 1e-12);
  CHECK(std::abs(rec.f_b - 1.0) <= 1e-12);
}

TEST_CASE("degrees flag converts angles") {
  const RunResult rad = run("design --case mirror-pc --theta 0.7853981633974483 --format json");
  const RunResult deg = run("design --case mirror-pc --theta 45 --degrees --format json");
  REQUIRE(rad.exit_code == 0);
  REQUIRE(deg.exit_code == 0);
  const auto a = qcm::record_from_json(rad.stdout_text);
  const auto b = qcm::record_from_json(deg.stdout_text);
  CHECK(std::abs(a.f_a - b.f_a) <= 1e-12);
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run("design --case universal --no-such-flag 1").exit_code == 2);
  CHECK(run("design --case fixed-theta --p 0.5").exit_code == 2);
  CHECK(run("design --case fixed-theta --theta 2.0 --p 0.5").exit_code == 3);
  CHECK(run("design --case two-state --overlap 1.0").exit_code == 3);
  CHECK(run("design --case universal --p 1.5").exit_code == 3);
  CHECK(run("moments --ensemble /tmp/definitely_missing.json").exit_code == 3);
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("simulate reproduces the closed-form map action") {
  // balanced shrinking machine: both copies shrink by 2/3, F = 5/6
  const double alpha = 2.0 * std::acos(std::sqrt(2.0 / 3.0));
  std::ostringstream cmd;
  cmd.precision(17);
  cmd << "simulate --omega " << alpha << "," << alpha << ",0,0,"
      << 0.5 * std::numbers::pi << "," << 0.5 * std::numbers::pi
      << " --state 1.1,0.4 --format json";
  const RunResult r = run(cmd.str());
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"f_a\":0.8333333333333") != std::string::npos);
  CHECK(r.stdout_text.find("\"f_b\":0.8333333333333") != std::string::npos);
}

TEST_CASE("simulate keeps the damping fixed point put") {
  std::ostringstream cmd;
  cmd << "simulate --omega 0," << std::numbers::pi << ",0,0,"
      << 0.5 * std::numbers::pi << "," << 0.5 * std::numbers::pi
      << " --state 0,0 --format json";
  const RunResult r = run(cmd.str());
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"copy_a\":[0,0,1]") != std::string::npos);
}

TEST_CASE("sweep emits the CSV frontier") {
  const RunResult r = run("sweep --case universal --p-grid 10 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.stdout_text);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "p,f_a,f_b,residual");
  CHECK(lines[1].substr(0, 2) == "0,");
  CHECK(lines[11].substr(0, 2) == "1,");
  // symmetric midpoint hits 5/6
  CHECK(lines[6].find("0.83333333333333") != std::string::npos);
}

TEST_CASE("moments compares the two computation routes") {
  const std::string path = write_temp(
      "ensemble.json", "{\"variant\": \"mirror_phase_covariant\", "
                       "\"theta_tilde\": 0.9553166181245093}");
  const RunResult r = run("moments --ensemble " + path + " --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"closed_form\"") != std::string::npos);
  CHECK(r.stdout_text.find("\"quadrature\"") != std::string::npos);
  CHECK(r.stdout_text.find("0.3333333333333") != std::string::npos);
}

TEST_CASE("design numeric accepts an ensemble file and is deterministic") {
  const std::string path = write_temp(
      "two_state.json", "{\"variant\": \"two_state\", \"overlap\": 0.5}");
  const std::string cmd =
      "design --case numeric --ensemble " + path + " --p 0.5 --format json";
  const RunResult a = run(cmd);
  const RunResult b = run(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  const qcm::OutputRecord rec = qcm::record_from_json(a.stdout_text);
  CHECK(std::abs(rec.objective - 0.987139) <= 1e-5);
}

TEST_CASE("verify quick suite passes") {
  const RunResult r = run("verify --suite quick");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("FAIL") == std::string::npos);
  CHECK(r.stdout_text.find("checks passed") != std::string::npos);
}
