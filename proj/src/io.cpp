// Copyright 2026 The qdarwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdarwin/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdarwin::io {
namespace {

constexpr const char* kBitOrder = "qubit 1 is the most significant bit";

const json& field(const json& j, const char* name, const std::string& context) {
  if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ValidationError(context + ": missing field '" + name + "'");
  return *it;
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  return j.get<double>();
}

std::complex<double> complex_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw ValidationError(what + " must be a [re, im] pair");
  return {number(j[0], what), number(j[1], what)};
}

json complex_to(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json state_to_json(const AnyState& state) {
  json j;
  json data = json::array();
  if (const auto* psi = std::get_if<PureState>(&state)) {
    j["n_qubits"] = psi->n_qubits();
    j["kind"] = "pure";
    for (Eigen::Index i = 0; i < psi->dim(); ++i) data.push_back(complex_to((*psi)(i)));
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    j["n_qubits"] = rho.n_qubits();
    j["kind"] = "density";
    for (Eigen::Index r = 0; r < rho.dim(); ++r)
      for (Eigen::Index c = 0; c < rho.dim(); ++c) data.push_back(complex_to(rho(r, c)));
  }
  j["bit_order"] = kBitOrder;
  j["data"] = std::move(data);
  return j;
}

AnyState state_from_json(const json& j) {
  const std::string ctx = "state file";
  const json& nq = field(j, "n_qubits", ctx);
  if (!nq.is_number_integer()) throw ValidationError(ctx + ": 'n_qubits' must be an integer");
  const int n = nq.get<int>();
  if (n < 1 || n > kMaxQubits) throw ValidationError(ctx + ": 'n_qubits' out of range");
  const json& kind = field(j, "kind", ctx);
  if (!kind.is_string()) throw ValidationError(ctx + ": 'kind' must be a string");
  const json& data = field(j, "data", ctx);
  if (!data.is_array()) throw ValidationError(ctx + ": 'data' must be an array");
  const std::size_t d = dimension_of(n);

  if (kind == "pure") {
    if (data.size() != d) throw ValidationError(ctx + ": 'data' must hold 2^n_qubits amplitudes");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = complex_from(data[i], ctx + ": 'data' entry");
    try {
      return PureState(n, std::move(v));
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": 'data' " + e.what());
    }
  }
  if (kind == "density") {
    if (data.size() != d * d) throw ValidationError(ctx + ": 'data' must hold 4^n_qubits entries");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from(data[r * d + c], ctx + ": 'data' entry");
    try {
      return DensityMatrix(std::move(m));
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": 'data' " + e.what());
    }
  }
  throw ValidationError(ctx + ": 'kind' must be \"pure\" or \"density\"");
}

json config_to_json(const DarwinismConfig& cfg) {
  json noise{{"kind", std::string(to_string(cfg.noise.kind))}};
  if (cfg.noise.p) noise["p"] = *cfg.noise.p;
  if (cfg.noise.target_purity) noise["target_purity"] = *cfg.noise.target_purity;
  return json{{"alpha", complex_to(cfg.alpha)},
              {"beta", complex_to(cfg.beta)},
              {"thetas_deg", cfg.thetas_deg},
              {"noise", noise},
              {"seed", cfg.seed}};
}

DarwinismConfig config_from_json(const json& j) {
  const std::string ctx = "config";
  DarwinismConfig cfg;
  cfg.alpha = complex_from(field(j, "alpha", ctx), ctx + ": 'alpha'");
  cfg.beta = complex_from(field(j, "beta", ctx), ctx + ": 'beta'");
  const json& thetas = field(j, "thetas_deg", ctx);
  if (!thetas.is_array() || thetas.empty()) throw ValidationError(ctx + ": 'thetas_deg' must be a nonempty array");
  for (const auto& t : thetas) cfg.thetas_deg.push_back(number(t, ctx + ": 'thetas_deg' entry"));

  if (j.contains("noise")) {
    const json& noise = j["noise"];
    const json& kind = field(noise, "kind", ctx + ": 'noise'");
    if (!kind.is_string()) throw ValidationError(ctx + ": 'noise.kind' must be a string");
    cfg.noise.kind = noise_kind_from_string(kind.get<std::string>());
    if (noise.contains("p")) cfg.noise.p = number(noise["p"], ctx + ": 'noise.p'");
    if (noise.contains("target_purity"))
      cfg.noise.target_purity = number(noise["target_purity"], ctx + ": 'noise.target_purity'");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      throw ValidationError(ctx + ": 'seed' must be a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  cfg.validate();
  return cfg;
}

json report_to_json(const CorrelationReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"fragment", r.fragment.members()},
                    {"I", r.mutual_info},
                    {"holevo", r.holevo},
                    {"discord", r.discord},
                    {"argmax", {r.argmax.theta_m, r.argmax.phi_m}},
                    {"optimizer_evals", r.optimizer_evals}});
  return json{{"system_entropy", report.system_entropy},
              {"classical_entropy", report.classical_entropy},
              {"coherence", report.coherence},
              {"rows", std::move(rows)}};
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string report_to_csv(const CorrelationReport& report) {
  std::ostringstream out;
  out << "fragment,size,I_bits,holevo_bits,discord_bits\n";
  for (const auto& r : report.rows)
    out << r.fragment.label() << ',' << r.fragment.size() << ',' << format_number(r.mutual_info) << ','
        << format_number(r.holevo) << ',' << format_number(r.discord) << '\n';
  return out.str();
}

std::string prefix_curve_to_csv(const std::vector<FragmentCorrelation>& rows) {
  std::ostringstream out;
  out << "prefix_len,fragment,I_bits,holevo_bits,discord_bits\n";
  for (const auto& r : rows)
    out << r.fragment.size() << ',' << r.fragment.label() << ',' << format_number(r.mutual_info) << ','
        << format_number(r.holevo) << ',' << format_number(r.discord) << '\n';
  return out.str();
}

json dataset_to_json(const TomographyDataset& ds) {
  json counts = json::object();
  for (std::size_t s = 0; s < ds.counts.size(); ++s) {
    json v = json::array();
    for (Eigen::Index o = 0; o < ds.counts[s].size(); ++o) {
      if (ds.exact())
        v.push_back(ds.counts[s](o));
      else
        v.push_back(static_cast<long long>(ds.counts[s](o)));
    }
    counts[MeasurementSetting::from_index(s, ds.n_qubits).bases()] = std::move(v);
  }
  return json{{"n_qubits", ds.n_qubits},
              {"shots_per_setting", ds.shots_per_setting},
              {"seed", ds.seed},
              {"bit_order", kBitOrder},
              {"counts", std::move(counts)}};
}

TomographyDataset dataset_from_json(const json& j) {
  const std::string ctx = "dataset";
  TomographyDataset ds;
  const json& nq = field(j, "n_qubits", ctx);
  const json& shots = field(j, "shots_per_setting", ctx);
  if (!nq.is_number_integer() || !shots.is_number_integer())
    throw ValidationError(ctx + ": 'n_qubits' and 'shots_per_setting' must be integers");
  ds.n_qubits = nq.get<int>();
  ds.shots_per_setting = shots.get<int>();
  if (j.contains("seed")) ds.seed = j["seed"].get<std::uint64_t>();
  const json& counts = field(j, "counts", ctx);
  if (!counts.is_object()) throw ValidationError(ctx + ": 'counts' must be an object");
  const auto settings = pauli_settings(ds.n_qubits);
  if (counts.size() != settings.size())
    throw ValidationError(ctx + ": 'counts' must hold all " + std::to_string(settings.size()) + " settings");
  for (const auto& s : settings) {
    const json& v = field(counts, s.bases().c_str(), ctx + ": 'counts'");
    if (!v.is_array()) throw ValidationError(ctx + ": 'counts." + s.bases() + "' must be an array");
    Eigen::VectorXd c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t o = 0; o < v.size(); ++o) c(static_cast<Eigen::Index>(o)) = number(v[o], ctx + ": count");
    ds.counts.push_back(std::move(c));
  }
  ds.validate();
  return ds;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::string content_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qdarwin::io
