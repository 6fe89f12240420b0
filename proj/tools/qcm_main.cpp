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

// qcm: design, simulate and verify optimal 1->2 qubit cloning machines.
//
// Exit codes: 0 success, 2 usage error, 3 domain violation,
// 4 verification failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcm/design.hpp"
#include "qcm/records.hpp"
#include "qcm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerify = 4;

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(what + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != count) {
    throw UsageError(what + ": expected " + std::to_string(count) +
                     " comma-separated values");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct DesignOptions {
  std::string case_id;
  double p = 0.5;
  double theta = 0.0;
  bool theta_given = false;
  double overlap = 0.5;
  bool overlap_given = false;
  double weight = 0.5;
  bool weight_given = false;
  std::string moments_text;
  std::string ensemble_path;
  bool degrees = false;
  std::string format = "text";
  std::uint64_t seed = 20260810;
};

qcm::EnsembleMoments moments_from_options(const DesignOptions& opt) {
  const bool have_moments = !opt.moments_text.empty();
  const bool have_ensemble = !opt.ensemble_path.empty();
  if (have_moments == have_ensemble) {
    throw UsageError(
        "this case needs exactly one of --moments or --ensemble");
  }
  if (have_moments) {
    const auto v = parse_doubles(opt.moments_text, 4, "--moments");
    return {v[0], v[1], v[2], v[3]};
  }
  return qcm::moments_closed_form(
      qcm::ensemble_from_json(read_file(opt.ensemble_path)));
}

void emit_record(const qcm::OutputRecord& rec, const std::string& format) {
  if (format == "json") {
    std::cout << qcm::to_json(rec) << "\n";
  } else if (format == "csv") {
    std::cout << qcm::csv_header() << "\n" << qcm::to_csv_row(rec) << "\n";
  } else {
    std::cout << qcm::to_text(rec);
  }
}

int run_design(const DesignOptions& opt_in) {
  DesignOptions opt = opt_in;
  const double scale = opt.degrees ? kPi / 180.0 : 1.0;
  opt.theta *= scale;

  qcm::OutputRecord rec;
  const std::string& c = opt.case_id;
  if (c == "universal") {
    rec = qcm::make_record(c, opt.p, qcm::design_universal(opt.p));
  } else if (c == "phase-covariant") {
    rec = qcm::make_record(c, opt.p, qcm::design_phase_covariant(opt.p));
  } else if (c == "fixed-theta") {
    if (!opt.theta_given) throw UsageError("fixed-theta needs --theta");
    std::ostringstream id;
    id << "fixed-theta theta=" << opt.theta;
    rec = qcm::make_record(id.str(), opt.p,
                           qcm::design_fixed_theta(opt.theta, opt.p));
  } else if (c == "centered-symmetric") {
    rec = qcm::make_record(
        c, 0.5, qcm::design_centered_symmetric(moments_from_options(opt)));
  } else if (c == "mirror-pc") {
    if (!opt.theta_given) throw UsageError("mirror-pc needs --theta");
    std::ostringstream id;
    id << "mirror-pc theta=" << opt.theta;
    rec = qcm::make_record(id.str(), 0.5, qcm::design_mirror_pc(opt.theta));
  } else if (c == "two-state") {
    if (!opt.overlap_given) throw UsageError("two-state needs --overlap");
    std::ostringstream id;
    id << "two-state s=" << opt.overlap;
    rec = qcm::make_record(id.str(), 0.5, qcm::design_two_state(opt.overlap));
  } else if (c == "two-state-weighted") {
    if (!opt.weight_given) {
      throw UsageError("two-state-weighted needs --weight");
    }
    const auto res = qcm::design_two_state_weighted(opt.weight);
    std::ostringstream id;
    id << "two-state-weighted k=" << opt.weight;
    rec = qcm::make_record(id.str(), 0.5, res.design);
    rec.f_psi1 = res.f_psi1;
    rec.f_psi2 = res.f_psi2;
    rec.objective = res.f_average;
  } else if (c == "numeric") {
    qcm::OptimizeBudget budget;
    budget.seed = opt.seed;
    rec = qcm::make_record(
        c, opt.p,
        qcm::optimize_numeric(moments_from_options(opt), opt.p, budget));
  } else {
    throw UsageError("unknown design case: " + c);
  }

  emit_record(rec, opt.format);
  return kExitOk;
}

struct SimulateOptions {
  std::string omega_text;
  std::string state_text;
  double length = 1.0;
  bool degrees = false;
  std::string format = "text";
};

int run_simulate(const SimulateOptions& opt) {
  const double scale = opt.degrees ? kPi / 180.0 : 1.0;
  const auto w = parse_doubles(opt.omega_text, 6, "--omega");
  const auto st = parse_doubles(opt.state_text, 2, "--state");
  const qcm::ParamSet omega = qcm::ParamSet::from_array(
      {w[0] * scale, w[1] * scale, w[2] * scale, w[3] * scale, w[4] * scale,
       w[5] * scale});
  const qcm::StateAngles angles{st[0] * scale, st[1] * scale};
  if (opt.length < 0.0 || opt.length > 1.0 + qcm::tol::validation) {
    throw std::invalid_argument("state length must lie in [0, 1]");
  }

  const qcm::BlochVector dir = qcm::bloch_from_angles(angles);
  const qcm::BlochVector input{opt.length * dir.x, opt.length * dir.y,
                               opt.length * dir.z};
  const qcm::ThreeQubitDensity out =
      qcm::evolve(omega, qcm::density_from_bloch(input));

  const qcm::BlochVector ra =
      qcm::bloch_from_density(qcm::reduce(out, qcm::Copy::A));
  const qcm::BlochVector rb =
      qcm::bloch_from_density(qcm::reduce(out, qcm::Copy::B));
  const double fa = 0.5 * (1.0 + ra.x * dir.x + ra.y * dir.y + ra.z * dir.z);
  const double fb = 0.5 * (1.0 + rb.x * dir.x + rb.y * dir.y + rb.z * dir.z);

  if (opt.format == "json") {
    std::cout << "{\"input\":[" << qcm::format_double(input.x) << ","
              << qcm::format_double(input.y) << ","
              << qcm::format_double(input.z) << "],\"copy_a\":["
              << qcm::format_double(ra.x) << "," << qcm::format_double(ra.y)
              << "," << qcm::format_double(ra.z) << "],\"copy_b\":["
              << qcm::format_double(rb.x) << "," << qcm::format_double(rb.y)
              << "," << qcm::format_double(rb.z)
              << "],\"f_a\":" << qcm::format_double(fa)
              << ",\"f_b\":" << qcm::format_double(fb) << "}\n";
  } else {
    std::cout.precision(12);
    std::cout << "input:  (" << input.x << ", " << input.y << ", " << input.z
              << ")\n"
              << "copy A: (" << ra.x << ", " << ra.y << ", " << ra.z
              << ")  F = " << fa << "\n"
              << "copy B: (" << rb.x << ", " << rb.y << ", " << rb.z
              << ")  F = " << fb << "\n";
  }
  return kExitOk;
}

struct SweepOptions {
  std::string case_id;
  int grid = 10;
  double theta = 0.0;
  bool theta_given = false;
  std::string moments_text;
  std::string ensemble_path;
  bool degrees = false;
  std::string format = "csv";
  std::uint64_t seed = 20260810;
};

int run_sweep(const SweepOptions& opt) {
  if (opt.grid < 1) throw UsageError("--p-grid must be >= 1");
  const double theta = opt.degrees ? opt.theta * kPi / 180.0 : opt.theta;

  std::vector<qcm::OutputRecord> rows;
  for (int i = 0; i <= opt.grid; ++i) {
    const double p = static_cast<double>(i) / opt.grid;
    qcm::DesignResult d;
    if (opt.case_id == "universal") {
      d = qcm::design_universal(p);
    } else if (opt.case_id == "phase-covariant") {
      d = qcm::design_phase_covariant(p);
    } else if (opt.case_id == "fixed-theta") {
      if (!opt.theta_given) throw UsageError("fixed-theta needs --theta");
      d = qcm::design_fixed_theta(theta, p);
    } else if (opt.case_id == "numeric") {
      DesignOptions tmp;
      tmp.moments_text = opt.moments_text;
      tmp.ensemble_path = opt.ensemble_path;
      qcm::OptimizeBudget budget;
      budget.seed = opt.seed;
      d = qcm::optimize_numeric(moments_from_options(tmp), p, budget);
    } else {
      throw UsageError("sweep supports universal, phase-covariant, "
                       "fixed-theta and numeric");
    }
    rows.push_back(qcm::make_record(opt.case_id, p, d));
  }

  if (opt.format == "json") {
    std::cout << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << qcm::to_json(rows[i]);
    }
    std::cout << "]\n";
  } else {
    std::cout << "p,f_a,f_b,residual\n";
    for (const auto& r : rows) {
      std::cout << qcm::format_double(r.p) << ',' << qcm::format_double(r.f_a)
                << ',' << qcm::format_double(r.f_b) << ','
                << qcm::format_double(r.residual) << "\n";
    }
  }
  return kExitOk;
}

int run_verify(const std::string& suite_name, std::uint64_t seed) {
  const qcm::verify::Suite suite = suite_name == "full"
                                       ? qcm::verify::Suite::full
                                       : qcm::verify::Suite::quick;
  const auto checks = qcm::verify::run_suite(suite, seed);

  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << c.name
              << std::scientific << std::setprecision(2) << "worst "
              << c.worst << "  bound " << c.bound << "  "
              << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  const std::size_t passed = static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(),
                    [](const auto& c) { return c.pass; }));
  std::cout << passed << "/" << checks.size() << " checks passed (suite "
            << suite_name << ", seed " << seed << ")\n";
  return qcm::verify::all_pass(checks) ? kExitOk : kExitVerify;
}

int run_moments(const std::string& ensemble_path, int resolution,
                const std::string& format) {
  const qcm::EnsembleSpec spec =
      qcm::ensemble_from_json(read_file(ensemble_path));
  const qcm::EnsembleMoments cf = qcm::moments_closed_form(spec);
  const qcm::EnsembleMoments q = qcm::moments_quadrature(spec, resolution);
  const double max_diff = std::max(
      {std::abs(cf.nz_bar - q.nz_bar), std::abs(cf.nx2_bar - q.nx2_bar),
       std::abs(cf.ny2_bar - q.ny2_bar), std::abs(cf.nz2_bar - q.nz2_bar)});

  if (format == "json") {
    const auto obj = [](const qcm::EnsembleMoments& m) {
      return "{\"nz_bar\":" + qcm::format_double(m.nz_bar) +
             ",\"nx2_bar\":" + qcm::format_double(m.nx2_bar) +
             ",\"ny2_bar\":" + qcm::format_double(m.ny2_bar) +
             ",\"nz2_bar\":" + qcm::format_double(m.nz2_bar) + "}";
    };
    std::cout << "{\"variant\":\"" << qcm::variant_name(spec)
              << "\",\"closed_form\":" << obj(cf) << ",\"quadrature\":"
              << obj(q) << ",\"max_abs_diff\":" << qcm::format_double(max_diff)
              << "}\n";
  } else {
    std::cout.precision(15);
    std::cout << "ensemble: " << qcm::variant_name(spec) << "\n"
              << "              nz_bar          nx2_bar         ny2_bar"
              << "         nz2_bar\n"
              << "closed     " << std::setw(15) << cf.nz_bar << " "
              << std::setw(15) << cf.nx2_bar << " " << std::setw(15)
              << cf.ny2_bar << " " << std::setw(15) << cf.nz2_bar << "\n"
              << "quadrature " << std::setw(15) << q.nz_bar << " "
              << std::setw(15) << q.nx2_bar << " " << std::setw(15)
              << q.ny2_bar << " " << std::setw(15) << q.nz2_bar << "\n"
              << "max |diff| " << max_diff << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcm: optimal 1->2 qubit cloning machines"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"text", "json", "csv"};

  DesignOptions dopt;
  auto* design = app.add_subcommand(
      "design", "Design an optimal machine for one ensemble case");
  design
      ->add_option("--case", dopt.case_id,
                   "universal | phase-covariant | fixed-theta | "
                   "centered-symmetric | mirror-pc | two-state | "
                   "two-state-weighted | numeric")
      ->required();
  design->add_option("--p", dopt.p, "asymmetry weight on copy A");
  design->add_option("--theta", dopt.theta, "polar angle (radians)");
  design->add_option("--overlap", dopt.overlap, "two-state overlap in [0,1)");
  design->add_option("--weight", dopt.weight, "prior of psi1 in [0,1/2]");
  design->add_option("--moments", dopt.moments_text,
                     "nz_bar,nx2_bar,ny2_bar,nz2_bar");
  design->add_option("--ensemble", dopt.ensemble_path,
                     "ensemble spec JSON file");
  design->add_flag("--degrees", dopt.degrees, "interpret angles as degrees");
  design->add_option("--format", dopt.format)->check(CLI::IsMember(formats));
  design->add_option("--seed", dopt.seed, "optimizer seed (numeric case)");

  SimulateOptions sopt;
  auto* simulate = app.add_subcommand(
      "simulate", "Clone one state through a machine and report both copies");
  simulate
      ->add_option("--omega", sopt.omega_text,
                   "alpha,alpha_tilde,beta,beta_tilde,gamma,gamma_tilde")
      ->required();
  simulate->add_option("--state", sopt.state_text, "theta,phi")->required();
  simulate->add_option("--length", sopt.length, "Bloch length of the input");
  simulate->add_flag("--degrees", sopt.degrees, "interpret angles as degrees");
  simulate->add_option("--format", sopt.format)->check(CLI::IsMember(formats));

  SweepOptions wopt;
  auto* sweep = app.add_subcommand(
      "sweep", "Trace the fidelity trade-off over an asymmetry grid");
  sweep->add_option("--case", wopt.case_id)->required();
  sweep->add_option("--p-grid", wopt.grid, "number of intervals (rows - 1)");
  sweep->add_option("--theta", wopt.theta, "polar angle (fixed-theta case)");
  sweep->add_option("--moments", wopt.moments_text);
  sweep->add_option("--ensemble", wopt.ensemble_path);
  sweep->add_flag("--degrees", wopt.degrees);
  sweep->add_option("--format", wopt.format)
      ->check(CLI::IsMember(std::vector<std::string>{"csv", "json"}));
  sweep->add_option("--seed", wopt.seed);

  std::string suite = "quick";
  std::uint64_t verify_seed = 20260810;
  auto* verify = app.add_subcommand("verify", "Run the invariant test suites");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember(std::vector<std::string>{"quick", "full"}));
  verify->add_option("--seed", verify_seed);

  std::string moments_path;
  int resolution = 64;
  std::string moments_format = "text";
  auto* moments = app.add_subcommand(
      "moments", "Closed-form and quadrature moments side by side");
  moments->add_option("--ensemble", moments_path, "ensemble spec JSON file")
      ->required();
  moments->add_option("--resolution", resolution);
  moments->add_option("--format", moments_format)
      ->check(CLI::IsMember(std::vector<std::string>{"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (design->parsed()) {
      dopt.theta_given = design->count("--theta") > 0;
      dopt.overlap_given = design->count("--overlap") > 0;
      dopt.weight_given = design->count("--weight") > 0;
      return run_design(dopt);
    }
    if (simulate->parsed()) return run_simulate(sopt);
    if (sweep->parsed()) {
      wopt.theta_given = sweep->count("--theta") > 0;
      return run_sweep(wopt);
    }
    if (verify->parsed()) return run_verify(suite, verify_seed);
    if (moments->parsed()) {
      return run_moments(moments_path, resolution, moments_format);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
