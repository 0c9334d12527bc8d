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

#include "qdarwin/commands.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdarwin/io.hpp"

namespace qdarwin::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path manifest_path_for(const fs::path& primary) {
  fs::path p = primary;
  p += ".manifest.json";
  return p;
}

/// Records what produced a set of output files. Outputs carry the manifest's
/// file name; the manifest itself holds the wall-clock timestamp.
struct RunManifest {
  std::string command;
  json inputs;
  json seeds = json::object();
  std::vector<fs::path> outputs;

  fs::path write(const fs::path& primary) const {
    const fs::path path = manifest_path_for(primary);
    json outs = json::array();
    for (const auto& o : outputs) outs.push_back(o.string());
    io::write_json_file(path, json{{"command", command},
                                   {"config_hash", io::content_hash(inputs)},
                                   {"inputs", inputs},
                                   {"seeds", seeds},
                                   {"versions", {{"qdarwin", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION)}}},
                                   {"timestamp_utc", utc_timestamp()},
                                   {"outputs", outs}});
    return path;
  }
};

std::string manifest_ref(const fs::path& primary) { return manifest_path_for(primary).filename().string(); }

std::string with_manifest_comment(const fs::path& primary, const std::string& csv) {
  return "# manifest: " + manifest_ref(primary) + "\n" + csv;
}

AnyState load_state(const std::string& path) { return io::state_from_json(io::read_json_file(path)); }

DarwinismConfig load_config(const std::string& source) {
  if (fs::exists(source)) return io::config_from_json(io::read_json_file(source));
  for (const auto& name : preset_names())
    if (source == name) return preset(name);
  throw ValidationError("config '" + source + "' is neither a readable file nor a preset (theta_A, theta_B)");
}

std::vector<Fragment> fragments_for(const std::string& spec, int n_qubits) {
  if (spec == "all") return enumerate_fragments(n_qubits - 1);
  std::vector<Fragment> out;
  for (auto& members : parse_fragment_list(spec)) {
    Fragment f(std::move(members));
    f.check_range(n_qubits);
    out.push_back(std::move(f));
  }
  return out;
}

PureState fidelity_target(const AnyState& input) {
  if (const auto* psi = std::get_if<PureState>(&input)) return *psi;
  const auto eig = hermitian_eigen(std::get<DensityMatrix>(input));
  Eigen::VectorXcd v = eig.eigenvectors.col(0);
  return PureState(v / v.norm());
}

struct Common {
  int grid = HolevoOptions{}.grid_size;
  int iters = HolevoOptions{}.refine_iters;
  HolevoOptions holevo() const { return {grid, iters, HolevoOptions{}.step_tolerance}; }
};

void add_holevo_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--holevo-grid", c.grid, "Holevo grid points per angle")->check(CLI::Range(8, 4096));
  cmd->add_option("--holevo-iters", c.iters, "Holevo simplex refinement iterations")->check(CLI::NonNegativeNumber);
}

}  // namespace

std::vector<std::vector<int>> parse_fragment_list(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<int> members;
    std::stringstream is(item);
    std::string tok;
    while (std::getline(is, tok, '-')) {
      try {
        std::size_t used = 0;
        const int q = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        members.push_back(q);
      } catch (const std::exception&) {
        throw ValidationError("--fragments: cannot parse '" + item + "'");
      }
    }
    if (members.empty()) throw ValidationError("--fragments: empty fragment in '" + text + "'");
    out.push_back(std::move(members));
  }
  if (out.empty()) throw ValidationError("--fragments: no fragments given");
  return out;
}

std::vector<int> parse_order(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') != std::string::npos) {
    for (const auto& f : parse_fragment_list(text)) {
      if (f.size() != 1) throw ValidationError("--order: entries must be single qubits");
      out.push_back(f.front());
    }
    return out;
  }
  for (char c : text) {
    if (c < '0' || c > '9') throw ValidationError("--order: '" + text + "' is not a qubit ordering");
    out.push_back(c - '0');
  }
  if (out.empty()) throw ValidationError("--order: empty ordering");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Darwinism simulator: branch states, fragment information, tomography"};
  app.name("qdarwin");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // simulate
  std::string sim_config, sim_out, sim_noise, sim_gate = "ry";
  std::optional<double> sim_p, sim_purity;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Build a branch state from a config file or preset");
  simulate->add_option("config", sim_config, "Config JSON path or preset name (theta_A, theta_B)")->required();
  simulate->add_option("-o,--out", sim_out, "Output state JSON")->required();
  simulate->add_option("--noise", sim_noise, "Override noise kind")->check(CLI::IsMember({"none", "depolarizing", "dephasing"}));
  simulate->add_option("--p", sim_p, "Noise strength p");
  simulate->add_option("--target-purity", sim_purity, "Calibrate noise to this purity (depolarizing unless --noise is given)");
  simulate->add_option("--seed", sim_seed, "Seed recorded in the manifest");
  simulate->add_option("--gate", sim_gate, "Coupling gate")->check(CLI::IsMember({"ry", "hamiltonian"}));

  // analyze
  Common an;
  std::string an_state, an_fragments = "all", an_json, an_csv;
  double an_delta = 0.3;
  auto* analyze = app.add_subcommand("analyze", "Mutual information, Holevo bound and discord per fragment");
  analyze->add_option("state", an_state, "State JSON")->required();
  analyze->add_option("--fragments", an_fragments, "'all' or a list such as 5,6 or 2-3-4-6,5");
  analyze->add_option("--delta", an_delta, "Redundancy threshold: (1 - delta) H(S)")->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--json", an_json, "Report JSON output (stdout when omitted)");
  analyze->add_option("--csv", an_csv, "Report CSV output");
  add_holevo_flags(analyze, an);

  // curve
  Common cu;
  std::string cu_state, cu_order, cu_csv;
  auto* curve = app.add_subcommand("curve", "Information along an accumulation order of environment qubits");
  curve->add_option("state", cu_state, "State JSON")->required();
  curve->add_option("--order", cu_order, "Permutation of environment qubits, e.g. 56234")->required();
  curve->add_option("--csv", cu_csv, "CSV output (stdout when omitted)");
  add_holevo_flags(curve, cu);

  // tomo
  Common to;
  std::string to_state, to_out, to_dataset, to_target, to_fragments;
  int to_shots = 700;
  int to_bootstrap = 100;
  std::uint64_t to_seed = 0;
  auto* tomo = app.add_subcommand("tomo", "Simulated Pauli tomography with bootstrap error bars");
  tomo->add_option("state", to_state, "State JSON")->required();
  tomo->add_option("--shots", to_shots, "Counts per setting; 0 selects exact probabilities");
  tomo->add_option("--seed", to_seed, "Sampling seed");
  auto* bootstrap_opt = tomo->add_option("--bootstrap", to_bootstrap, "Bootstrap trials (0 disables)");
  tomo->add_option("-o,--out", to_out, "Output JSON")->required();
  tomo->add_option("--save-dataset", to_dataset, "Also write the simulated dataset JSON");
  tomo->add_option("--target", to_target, "Pure target state JSON for fidelity (default: the input)");
  tomo->add_option("--fragments", to_fragments, "Fragments for mutual information / Holevo error bars");
  add_holevo_flags(tomo, to);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qdarwin: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*simulate) {
      DarwinismConfig cfg = load_config(sim_config);
      if (!sim_noise.empty()) {
        cfg.noise = NoiseSpec{noise_kind_from_string(sim_noise), std::nullopt, std::nullopt};
      }
      if (sim_p || sim_purity) {
        if (sim_noise.empty() && cfg.noise.kind == NoiseSpec::Kind::none) cfg.noise.kind = NoiseSpec::Kind::depolarizing;
        cfg.noise.p = sim_p;
        cfg.noise.target_purity = sim_purity;
      }
      if (sim_seed) cfg.seed = *sim_seed;
      cfg.validate();
      const auto gate = sim_gate == "hamiltonian" ? CouplingGate::hamiltonian : CouplingGate::controlled_ry;
      const PureState psi = build_darwinism_state<double>(cfg, gate);
      const AnyState state = cfg.noise.kind == NoiseSpec::Kind::none ? AnyState(psi) : AnyState(apply_noise(psi, cfg.noise));

      json j = io::state_to_json(state);
      j["manifest"] = manifest_ref(sim_out);
      io::write_json_file(sim_out, j);
      RunManifest m{"simulate", {{"config", io::config_to_json(cfg)}, {"gate", sim_gate}}, {{"config_seed", cfg.seed}}, {sim_out}};
      m.write(sim_out);
      const DensityMatrix rho = to_density(state);
      out << "wrote " << sim_out << ": " << rho.n_qubits() << " qubits, "
          << (std::holds_alternative<PureState>(state) ? "pure" : "density") << ", purity "
          << io::format_number(purity(rho)) << "\n";
      return kExitOk;
    }

    if (*analyze) {
      const AnyState state = load_state(an_state);
      const DensityMatrix rho = to_density(state);
      const auto fragments = fragments_for(an_fragments, rho.n_qubits());
      const CorrelationReport report = fragment_report(rho, fragments, an.holevo());
      const auto k = redundancy(mean_mutual_information_by_size(rho), report.system_entropy, an_delta);

      json j = io::report_to_json(report);
      j["redundancy"] = {{"delta", an_delta}, {"k", k ? json(*k) : json(nullptr)}};
      j["holevo_options"] = {{"grid_size", an.grid}, {"refine_iters", an.iters}};
      const fs::path primary = !an_json.empty() ? fs::path(an_json) : fs::path(an_csv);
      if (!primary.empty()) j["manifest"] = manifest_ref(primary);
      if (!an_json.empty())
        io::write_json_file(an_json, j);
      else
        out << j.dump(2) << "\n";
      if (!an_csv.empty()) io::write_text_file(an_csv, with_manifest_comment(primary, io::report_to_csv(report)));
      if (!primary.empty()) {
        RunManifest m{"analyze",
                      {{"state", io::content_hash(io::state_to_json(state))},
                       {"fragments", an_fragments},
                       {"delta", an_delta},
                       {"holevo_grid", an.grid},
                       {"holevo_iters", an.iters}},
                      json::object(),
                      {}};
        if (!an_json.empty()) m.outputs.emplace_back(an_json);
        if (!an_csv.empty()) m.outputs.emplace_back(an_csv);
        m.write(primary);
      }
      return kExitOk;
    }

    if (*curve) {
      const DensityMatrix rho = to_density(load_state(cu_state));
      const auto rows = accumulation_curve(rho, parse_order(cu_order), cu.holevo());
      const std::string csv = io::prefix_curve_to_csv(rows);
      if (cu_csv.empty()) {
        out << csv;
      } else {
        io::write_text_file(cu_csv, with_manifest_comment(cu_csv, csv));
        RunManifest m{"curve",
                      {{"state", io::content_hash(io::state_to_json(AnyState(rho)))},
                       {"order", cu_order},
                       {"holevo_grid", cu.grid},
                       {"holevo_iters", cu.iters}},
                      json::object(),
                      {cu_csv}};
        m.write(cu_csv);
      }
      return kExitOk;
    }

    if (*tomo) {
      if (to_shots < 0) throw ValidationError("--shots must be nonnegative");
      const bool bootstrap_given = bootstrap_opt->count() > 0;
      if (to_shots == 0 && bootstrap_given && to_bootstrap > 0)
        throw ValidationError("--bootstrap needs --shots >= 1 (exact mode has no shot noise to resample)");
      if (to_shots == 0) to_bootstrap = 0;
      if (to_bootstrap == 1 || to_bootstrap < 0) throw ValidationError("--bootstrap must be 0 or at least 2");

      const AnyState input = load_state(to_state);
      const DensityMatrix rho = to_density(input);
      const PureState target = to_target.empty() ? fidelity_target(input) : std::get<PureState>(load_state(to_target));
      if (target.n_qubits() != rho.n_qubits()) throw ValidationError("--target: qubit count differs from the state");

      const TomographyDataset ds = to_shots == 0 ? exact_dataset(rho) : sample_dataset(rho, to_shots, to_seed);
      const DensityMatrix estimate = reconstruct(ds);

      std::vector<ScalarFunctional> functionals{fidelity_functional(target), purity_functional(), coherence_functional()};
      if (!to_fragments.empty())
        for (const auto& f : fragments_for(to_fragments, rho.n_qubits())) {
          functionals.push_back(mutual_info_functional(f));
          functionals.push_back(holevo_functional(f, to.holevo()));
        }
      std::vector<DensityMatrix> ensemble;
      if (to_bootstrap > 0) ensemble = bootstrap(ds, to_bootstrap, to_seed);

      json stats = json::object();
      for (const auto& f : functionals) {
        json s{{"value", f.evaluate(estimate)}};
        if (!ensemble.empty()) {
          const ErrorBar eb = scalar_errorbar(ensemble, f);
          s["mean"] = eb.mean;
          s["std"] = eb.stddev;
          s["formatted"] = eb.format();
          out << f.name << ": " << eb.format() << "\n";
        } else {
          out << f.name << ": " << io::format_number(s["value"].get<double>()) << "\n";
        }
        stats[f.name] = std::move(s);
      }

      json j{{"reconstruction", io::state_to_json(estimate)},
             {"shots_per_setting", to_shots},
             {"settings", ds.counts.size()},
             {"seed", to_seed},
             {"bootstrap_trials", to_bootstrap},
             {"statistics", stats},
             {"manifest", manifest_ref(to_out)}};
      io::write_json_file(to_out, j);
      RunManifest m{"tomo",
                    {{"state", io::content_hash(io::state_to_json(input))},
                     {"shots", to_shots},
                     {"bootstrap", to_bootstrap},
                     {"fragments", to_fragments}},
                    {{"sampling_seed", to_seed}},
                    {to_out}};
      if (!to_dataset.empty()) {
        json dj = io::dataset_to_json(ds);
        dj["manifest"] = manifest_ref(to_out);
        io::write_json_file(to_dataset, dj);
        m.outputs.emplace_back(to_dataset);
      }
      m.write(to_out);
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "qdarwin: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::bad_variant_access&) {
    err << "qdarwin: --target must be a pure state file\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "qdarwin: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace qdarwin::cli
