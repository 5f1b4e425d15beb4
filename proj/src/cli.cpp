// Copyright 2026 The qrc-ipc Authors
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


#include "qrc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "qrc/errors.hpp"
#include "qrc/experiments.hpp"
#include "qrc/output.hpp"
#include "qrc/random.hpp"
#include "qrc/text.hpp"

namespace qrc {

namespace {

namespace fs = std::filesystem;

struct FlagBinding {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagBinding kFlagBindings[] = {
    {"--seed", "run.seed", "master seed (u64)"},
    {"--length", "run.length", "evaluation steps L after washout"},
    {"--washout", "run.washout", "discarded initial steps"},
    {"--preset", "run.preset", "paper | desk"},
    {"--realizations", "run.realizations", "realizations per sweep value"},
    {"--dmax", "ipc.d_max", "maximum target degree"},
    {"--dt", "reservoir.dt", "time between inputs"},
    {"--n-qubits", "reservoir.n_qubits", "number of qubits"},
    {"--virtual-nodes", "reservoir.virtual_nodes", "snapshots per input"},
    {"--field-h", "reservoir.field_h", "transverse field h"},
    {"--coupling-scale", "reservoir.coupling_scale", "coupling spread J_s"},
    {"--observables", "reservoir.observables", "e.g. z, x+y, xy+z"},
    {"--axis", "sweep.axis", "sweep parameter"},
    {"--values", "sweep.values", "comma-separated sweep values"},
};

struct Parsed {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::map<std::string, std::string> flags;  // key → raw value
  bool design_csv = false;
  double tolerance = 1e-3;
};

void add_common(CLI::App& sub, Parsed& parsed) {
  sub.add_option("--config", parsed.config, "configuration file");
  sub.add_option("--out", parsed.out, std::string("output directory (default $") + kOutEnv + " or " +
                                          kDefaultOut + ")");
  for (const FlagBinding& b : kFlagBindings) {
    sub.add_option_function<std::string>(
        b.flag, [&parsed, key = std::string(b.key)](const std::string& v) { parsed.flags[key] = v; },
        b.help);
  }
}

RunSettings oracle_settings(RunSettings s) {
  s.reservoir.n_qubits = 1;
  s.reservoir.coupling_scale = 0.0;
  s.reservoir.virtual_nodes = 1;
  s.reservoir.observables = ObservableSet::parse("z");
  return s;
}

Provenance provenance(const RunManifest& m, std::string started) {
  return {m.version, hex64(m.config_hash), std::move(started), utc_timestamp()};
}

std::string to_csv(void (*writer)(std::ostream&, const FigureDataset&), const FigureDataset& d) {
  std::ostringstream s;
  writer(s, d);
  return s.str();
}

struct ManifestWriter {
  explicit ManifestWriter(const RunManifest& m) : manifest(m) {}

  const RunManifest& manifest;
  std::string started = utc_timestamp();
  std::vector<std::string> outputs;

  void write(bool complete, const std::string& error = {}) const {
    nlohmann::json doc = manifest_json(manifest);
    doc["complete"] = complete;
    doc["started"] = started;
    if (complete || !error.empty()) doc["finished"] = utc_timestamp();
    doc["outputs"] = outputs;
    if (!error.empty()) doc["error"] = error;
    write_json(manifest.out_dir / "manifest.json", doc);
  }

  void emit(const std::string& name, std::string_view content) {
    write_file(manifest.out_dir / name, content);
    outputs.push_back(name);
  }
};

RealizationSeeds single_run_seeds(std::uint64_t seed) {
  return {derive_seed(seed, SeedStream::kCouplings), derive_seed(seed, SeedStream::kInputs)};
}

void emit_report(ManifestWriter& mw, const CapacityReport& report) {
  mw.emit("report.json", report_json(report).dump(2) + "\n");
  std::ostringstream csv;
  write_records_csv(csv, report);
  mw.emit("records.csv", csv.str());
}

int run_single(ManifestWriter& mw, const DispatchOptions& options, std::ostream& out, bool memory) {
  const RunSettings& s = mw.manifest.settings;
  const RealizationSeeds seeds = single_run_seeds(s.seed);
  ReservoirConfig config = s.reservoir;
  config.coupling_seed = seeds.couplings;
  const InputSequence inputs = InputSequence::generate(s.lengths.washout + s.lengths.length, seeds.inputs);
  const DesignMatrix design = run(config, inputs, s.lengths.washout);
  if (options.design_csv) {
    std::ostringstream csv;
    write_design_csv(csv, design);
    mw.emit("design.csv", csv.str());
  }
  CapacityReport report = ipc_profile(design, inputs, s.lengths.washout, s.ipc);
  report.metadata.config = config;
  emit_report(mw, report);
  if (memory) {
    const std::vector<MemoryPoint> curve = linear_memory_curve(report);
    mw.emit("memory_curve.json", memory_curve_json(curve, report).dump(2) + "\n");
    std::ostringstream csv;
    write_memory_csv(csv, curve);
    mw.emit("memory_curve.csv", csv.str());
  }
  char line[160];
  std::snprintf(line, sizeof line, "total IPC %.6f  normalized %.6f  n_vars %zu  threshold %.3g\n",
                report.total, report.normalized_total, report.n_vars, report.threshold);
  out << line;
  for (const auto& [d, v] : report.per_degree_totals) {
    if (v > 0.0) {
      std::snprintf(line, sizeof line, "  degree %d  %.6f\n", d, v);
      out << line;
    }
  }
  if (!report.truncated_degrees.empty()) {
    out << "  warning: window edge above threshold for degree(s)";
    for (int d : report.truncated_degrees) out << ' ' << d;
    out << '\n';
  }
  return kExitOk;
}

int run_oracle(ManifestWriter& mw, const DispatchOptions& options, std::ostream& out) {
  const RunSettings& s = mw.manifest.settings;
  const RealizationSeeds seeds = single_run_seeds(s.seed);
  CapacityReport report = run_realization(s.reservoir, s.lengths, s.ipc, seeds);
  emit_report(mw, report);
  const bool pass = std::abs(report.total - 1.0) <= options.oracle_tolerance;
  char line[160];
  std::snprintf(line, sizeof line, "oracle: total IPC %.6f (expected 1 +/- %g) %s\n", report.total,
                options.oracle_tolerance, pass ? "PASS" : "FAIL");
  out << line;
  return pass ? kExitOk : kExitFailure;
}

int run_sweep_cmd(ManifestWriter& mw, std::ostream& out) {
  const RunSettings& s = mw.manifest.settings;
  if (!s.sweep_axis || s.sweep_values.empty()) {
    throw ConfigError("sweep.axis", "sweep needs an axis and a list of values");
  }
  SweepPlan plan;
  plan.base = s.reservoir;
  plan.axis = *s.sweep_axis;
  plan.values = s.sweep_values;
  plan.realizations = s.realizations;
  plan.lengths = s.lengths;
  plan.ipc = s.ipc;
  plan.master_seed = s.seed;
  const FigureDataset data = run_sweep(plan);
  mw.emit("sweep.json", sweep_json(data, provenance(mw.manifest, mw.started)).dump(2) + "\n");
  mw.emit("sweep.csv", to_csv(&write_sweep_csv, data));
  for (const SweepPoint& p : data.points) {
    char line[200];
    if (p.ok() && p.summary) {
      std::snprintf(line, sizeof line, "%s = %-8s total %.4f +/- %.4f  normalized %.4f +/- %.4f\n",
                    std::string(axis_name(data.axis)).c_str(), p.value.c_str(), p.summary->total.mean,
                    p.summary->total.stddev, p.summary->normalized_total.mean,
                    p.summary->normalized_total.stddev);
      out << line;
    } else {
      out << axis_name(data.axis) << " = " << p.value << "  failed: " << p.error << '\n';
    }
  }
  return data.complete() ? kExitOk : kExitFailure;
}

int run_converge(ManifestWriter& mw, std::ostream& out) {
  const RunSettings& s = mw.manifest.settings;
  const ConvergenceDataset data = run_convergence(s.reservoir, s.converge_dt, s.converge_inputs, s.seed);
  mw.emit("convergence.json", convergence_json(data, provenance(mw.manifest, mw.started)).dump(2) + "\n");
  std::ostringstream csv;
  write_convergence_csv(csv, data);
  mw.emit("convergence.csv", csv.str());
  for (const ConvergenceCurve& c : data.curves) {
    const auto n = c.inputs_to(1e-4);
    out << "dt = " << format_double(c.dt) << "  inputs to 1e-4: "
        << (n ? std::to_string(*n) : std::string("not reached")) << '\n';
  }
  return kExitOk;
}

}  // namespace

int dispatch(const RunManifest& manifest, const DispatchOptions& options, std::ostream& out,
             std::ostream& err) {
  ManifestWriter mw{manifest};
  try {
    mw.write(false);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  try {
    int status = kExitUsage;
    if (manifest.subcommand == "ipc") {
      status = run_single(mw, options, out, false);
    } else if (manifest.subcommand == "memory-curve") {
      status = run_single(mw, options, out, true);
    } else if (manifest.subcommand == "oracle") {
      status = run_oracle(mw, options, out);
    } else if (manifest.subcommand == "sweep") {
      status = run_sweep_cmd(mw, out);
    } else if (manifest.subcommand == "converge") {
      status = run_converge(mw, out);
    } else {
      err << "error: unknown subcommand '" << manifest.subcommand << "'\n";
      mw.write(false, "unknown subcommand");
      return kExitUsage;
    }
    // an oracle miss is still a complete run
    mw.write(status == kExitOk || manifest.subcommand == "oracle",
             status == kExitOk ? std::string{} : std::string("run reported failure"));
    return status;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    mw.write(false, e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    try {
      mw.write(false, e.what());
    } catch (const std::exception&) {
    }
    return kExitFailure;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information processing capacity of a quantum reservoir computer", "qrc-ipc"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kVersion));

  Parsed parsed;
  struct Sub {
    const char* name;
    const char* help;
  };
  constexpr Sub subs[] = {
      {"converge", "distance between trajectories from |0..0> and |1..1>"},
      {"ipc", "capacity profile of one reservoir"},
      {"sweep", "capacity profiles across a parameter axis"},
      {"memory-curve", "degree-1 capacity versus delay"},
      {"oracle", "single-qubit self-test with known total capacity 1"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(*sub, parsed);
    if (std::string_view(s.name) == "ipc" || std::string_view(s.name) == "memory-curve") {
      sub->add_flag("--design-csv", parsed.design_csv, "also write the design matrix");
    }
    if (std::string_view(s.name) == "oracle") {
      sub->add_option("--tolerance", parsed.tolerance, "allowed |total - 1|")->check(CLI::PositiveNumber);
    }
  }

  if (!args.empty() && !args.front().starts_with('-') &&
      std::none_of(std::begin(subs), std::end(subs), [&](const Sub& s) { return args.front() == s.name; })) {
    err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::vector<Setting> flags;
  for (const FlagBinding& b : kFlagBindings) {
    if (const auto it = parsed.flags.find(b.key); it != parsed.flags.end()) {
      flags.push_back({b.key, it->second, b.flag});
    }
  }

  fs::path out_dir = kDefaultOut;
  if (parsed.out) {
    out_dir = *parsed.out;
  } else if (const char* env = std::getenv(kOutEnv); env && *env) {
    out_dir = env;
  }

  RunManifest manifest;
  try {
    const std::optional<fs::path> path =
        parsed.config ? std::optional<fs::path>(*parsed.config) : std::nullopt;
    manifest = parse_config(name, path, flags, out_dir);
    if (name == "oracle") manifest = make_manifest(name, oracle_settings(manifest.settings), out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return dispatch(manifest, {parsed.design_csv, parsed.tolerance}, out, err);
}

}  // namespace qrc
