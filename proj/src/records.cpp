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

#include "qcm/records.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qcm {

OutputRecord make_record(const std::string& case_id, double p,
                         const DesignResult& d) {
  OutputRecord rec;
  rec.case_id = case_id;
  rec.p = p;
  rec.omega = d.omega;
  rec.map_a = d.map_a;
  rec.map_b = d.map_b;
  rec.f_a = d.f_a;
  rec.f_b = d.f_b;
  rec.objective = p * d.f_a + (1.0 - p) * d.f_b;
  rec.residual = d.residual;
  rec.channel = std::string(to_string(d.channel_id));
  return rec;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_kv(std::string& out, const char* key, double v, bool comma = true) {
  out += '"';
  out += key;
  out += "\":";
  out += format_double(v);
  if (comma) out += ',';
}

std::string map_json(const AffineMap& m) {
  std::string out = "{";
  append_kv(out, "eta_x", m.eta_x);
  append_kv(out, "eta_y", m.eta_y);
  append_kv(out, "eta_z", m.eta_z);
  append_kv(out, "delta_z", m.delta_z, false);
  out += '}';
  return out;
}

}  // namespace

std::string to_json(const OutputRecord& rec) {
  std::string out = "{\"case\":\"" + rec.case_id + "\",";
  append_kv(out, "p", rec.p);
  out += "\"omega\":{";
  append_kv(out, "alpha", rec.omega.alpha);
  append_kv(out, "alpha_tilde", rec.omega.alpha_tilde);
  append_kv(out, "beta", rec.omega.beta);
  append_kv(out, "beta_tilde", rec.omega.beta_tilde);
  append_kv(out, "gamma", rec.omega.gamma);
  append_kv(out, "gamma_tilde", rec.omega.gamma_tilde, false);
  out += "},\"map_a\":" + map_json(rec.map_a);
  out += ",\"map_b\":" + map_json(rec.map_b) + ",";
  append_kv(out, "f_a", rec.f_a);
  append_kv(out, "f_b", rec.f_b);
  append_kv(out, "objective", rec.objective);
  append_kv(out, "residual", rec.residual);
  if (rec.f_psi1) append_kv(out, "f_psi1", *rec.f_psi1);
  if (rec.f_psi2) append_kv(out, "f_psi2", *rec.f_psi2);
  out += "\"channel\":\"" + rec.channel + "\"}";
  return out;
}

OutputRecord record_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    OutputRecord rec;
    rec.case_id = j.at("case").get<std::string>();
    rec.p = j.at("p").get<double>();
    const auto& w = j.at("omega");
    rec.omega = {w.at("alpha").get<double>(),
                 w.at("alpha_tilde").get<double>(),
                 w.at("beta").get<double>(),
                 w.at("beta_tilde").get<double>(),
                 w.at("gamma").get<double>(),
                 w.at("gamma_tilde").get<double>()};
    const auto read_map = [&j](const char* key) {
      const auto& m = j.at(key);
      return AffineMap{m.at("eta_x").get<double>(), m.at("eta_y").get<double>(),
                       m.at("eta_z").get<double>(),
                       m.at("delta_z").get<double>()};
    };
    rec.map_a = read_map("map_a");
    rec.map_b = read_map("map_b");
    rec.f_a = j.at("f_a").get<double>();
    rec.f_b = j.at("f_b").get<double>();
    rec.objective = j.at("objective").get<double>();
    rec.residual = j.at("residual").get<double>();
    rec.channel = j.at("channel").get<std::string>();
    if (j.contains("f_psi1")) rec.f_psi1 = j.at("f_psi1").get<double>();
    if (j.contains("f_psi2")) rec.f_psi2 = j.at("f_psi2").get<double>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid record JSON: ") +
                                e.what());
  }
}

std::string csv_header() {
  return "case,p,alpha,alpha_tilde,beta,beta_tilde,gamma,gamma_tilde,"
         "eta_x_a,eta_y_a,eta_z_a,delta_z_a,eta_x_b,eta_y_b,eta_z_b,delta_z_b,"
         "f_a,f_b,objective,residual,channel";
}

std::string to_csv_row(const OutputRecord& rec) {
  std::ostringstream os;
  os << rec.case_id << ',' << format_double(rec.p);
  for (const double v : rec.omega.to_array()) os << ',' << format_double(v);
  for (const AffineMap* m : {&rec.map_a, &rec.map_b}) {
    os << ',' << format_double(m->eta_x) << ',' << format_double(m->eta_y)
       << ',' << format_double(m->eta_z) << ',' << format_double(m->delta_z);
  }
  os << ',' << format_double(rec.f_a) << ',' << format_double(rec.f_b) << ','
     << format_double(rec.objective) << ',' << format_double(rec.residual)
     << ',' << rec.channel;
  return os.str();
}

std::string to_text(const OutputRecord& rec) {
  std::ostringstream os;
  os.precision(12);
  os << "case:      " << rec.case_id << "  (p = " << rec.p << ")\n"
     << "omega:     alpha=" << rec.omega.alpha
     << " alpha_tilde=" << rec.omega.alpha_tilde << " beta=" << rec.omega.beta
     << " beta_tilde=" << rec.omega.beta_tilde << " gamma=" << rec.omega.gamma
     << " gamma_tilde=" << rec.omega.gamma_tilde << "\n"
     << "map A:     eta=(" << rec.map_a.eta_x << ", " << rec.map_a.eta_y
     << ", " << rec.map_a.eta_z << ")  delta_z=" << rec.map_a.delta_z << "\n"
     << "map B:     eta=(" << rec.map_b.eta_x << ", " << rec.map_b.eta_y
     << ", " << rec.map_b.eta_z << ")  delta_z=" << rec.map_b.delta_z << "\n"
     << "fidelity:  F_A=" << rec.f_a << "  F_B=" << rec.f_b
     << "  objective=" << rec.objective << "\n";
  if (rec.f_psi1 && rec.f_psi2) {
    os << "per state: F_psi1=" << *rec.f_psi1 << "  F_psi2=" << *rec.f_psi2
       << "\n";
  }
  os << "residual:  " << rec.residual << "  channel: " << rec.channel << "\n";
  return os.str();
}

}  // namespace qcm
