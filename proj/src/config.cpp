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


#include "qrc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include "qrc/errors.hpp"
#include "qrc/legendre.hpp"
#include "qrc/output.hpp"
#include "qrc/random.hpp"
#include "qrc/text.hpp"

namespace qrc {

namespace {

using Setter = std::function<void(RunSettings&, std::string_view)>;

[[noreturn]] void out_of_range(std::string_view value, std::string_view rule) {
  throw ValidationError(std::string(trim(value)) + " is out of range (" + std::string(rule) + ")");
}

int int_in(std::string_view v, std::string_view what, long long lo, long long hi) {
  const long long n = parse_int(v, what);
  if (n < lo || n > hi) {
    out_of_range(v, "expected " + std::to_string(lo) + " .. " + std::to_string(hi));
  }
  return static_cast<int>(n);
}

std::size_t size_in(std::string_view v, std::string_view what, long long lo, long long hi) {
  return static_cast<std::size_t>(int_in(v, what, lo, hi));
}

double finite(std::string_view v, std::string_view what) {
  const double x = parse_double(v, what);
  if (!std::isfinite(x)) out_of_range(v, "must be finite");
  return x;
}

double positive(std::string_view v, std::string_view what) {
  const double x = finite(v, what);
  if (!(x > 0.0)) out_of_range(v, "must be > 0");
  return x;
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const std::size_t comma = v.find(',', start);
    const std::string_view item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

constexpr long long kMaxSteps = 100'000'000;

const std::vector<std::pair<std::string_view, Setter>>& setters() {
  static const std::vector<std::pair<std::string_view, Setter>> table = {
      {"reservoir.n_qubits",
       [](RunSettings& s, std::string_view v) { s.reservoir.n_qubits = int_in(v, "n_qubits", 1, kMaxQubits); }},
      {"reservoir.field_h", [](RunSettings& s, std::string_view v) { s.reservoir.field_h = finite(v, "field_h"); }},
      {"reservoir.coupling_scale",
       [](RunSettings& s, std::string_view v) {
         const double x = finite(v, "coupling_scale");
         if (x < 0.0) out_of_range(v, "must be >= 0");
         s.reservoir.coupling_scale = x;
       }},
      {"reservoir.dt", [](RunSettings& s, std::string_view v) { s.reservoir.dt = positive(v, "dt"); }},
      {"reservoir.virtual_nodes",
       [](RunSettings& s, std::string_view v) { s.reservoir.virtual_nodes = int_in(v, "virtual_nodes", 1, 10'000); }},
      {"reservoir.observables",
       [](RunSettings& s, std::string_view v) { s.reservoir.observables = ObservableSet::parse(trim(v)); }},
      {"run.preset", [](RunSettings& s, std::string_view v) { apply_preset(s, trim(v)); }},
      {"run.length", [](RunSettings& s, std::string_view v) { s.lengths.length = size_in(v, "length", 1, kMaxSteps); }},
      {"run.washout",
       [](RunSettings& s, std::string_view v) { s.lengths.washout = size_in(v, "washout", 1, kMaxSteps); }},
      {"run.seed", [](RunSettings& s, std::string_view v) { s.seed = parse_u64(v, "seed"); }},
      {"run.realizations",
       [](RunSettings& s, std::string_view v) { s.realizations = int_in(v, "realizations", 1, 10'000); }},
      {"ipc.d_max", [](RunSettings& s, std::string_view v) { s.ipc.d_max = int_in(v, "d_max", 1, kMaxLegendreDegree); }},
      {"ipc.surrogates",
       [](RunSettings& s, std::string_view v) { s.ipc.surrogates = int_in(v, "surrogates", 1, 10'000); }},
      {"ipc.threshold_factor",
       [](RunSettings& s, std::string_view v) { s.ipc.threshold_factor = positive(v, "threshold_factor"); }},
      {"ipc.samples_per_degree",
       [](RunSettings& s, std::string_view v) {
         s.ipc.samples_per_degree = int_in(v, "samples_per_degree", 1, 10'000'000);
       }},
      {"ipc.anchored_surrogates",
       [](RunSettings& s, std::string_view v) { s.ipc.anchored_surrogates = parse_bool(v, "anchored_surrogates"); }},
      {"ipc.delay_origin",
       [](RunSettings& s, std::string_view v) { s.ipc.windows.delay_origin = int_in(v, "delay_origin", 0, 1'000'000); }},
      {"ipc.window.degree1_max_delay",
       [](RunSettings& s, std::string_view v) {
         s.ipc.windows.degree1_max_delay = int_in(v, "degree1_max_delay", 0, 1'000'000);
       }},
      {"ipc.window.degree1_block",
       [](RunSettings& s, std::string_view v) { s.ipc.windows.degree1_block = int_in(v, "degree1_block", 1, 1'000'000); }},
      {"ipc.window.degree1_extend",
       [](RunSettings& s, std::string_view v) { s.ipc.windows.degree1_extend = parse_bool(v, "degree1_extend"); }},
      {"ipc.window.degree2_max_delay",
       [](RunSettings& s, std::string_view v) {
         s.ipc.windows.degree2_max_delay = int_in(v, "degree2_max_delay", 0, 100'000);
       }},
      {"ipc.window.degree3_4_max_delay",
       [](RunSettings& s, std::string_view v) {
         s.ipc.windows.degree3_4_max_delay = int_in(v, "degree3_4_max_delay", 0, 10'000);
       }},
      {"ipc.window.high_degree_max_delay",
       [](RunSettings& s, std::string_view v) {
         s.ipc.windows.high_degree_max_delay = int_in(v, "high_degree_max_delay", 0, 1'000);
       }},
      {"ipc.window.high_degree_max_terms",
       [](RunSettings& s, std::string_view v) {
         s.ipc.windows.high_degree_max_terms = int_in(v, "high_degree_max_terms", 1, kMaxLegendreDegree);
       }},
      {"sweep.axis", [](RunSettings& s, std::string_view v) { s.sweep_axis = parse_axis(trim(v)); }},
      {"sweep.values",
       [](RunSettings& s, std::string_view v) {
         s.sweep_values = split_list(v);
         if (s.sweep_values.empty()) throw ValidationError("list is empty");
       }},
      {"converge.dt_values",
       [](RunSettings& s, std::string_view v) {
         std::vector<double> dts;
         for (const std::string& item : split_list(v)) dts.push_back(positive(item, "dt_values"));
         if (dts.empty()) throw ValidationError("list is empty");
         s.converge_dt = std::move(dts);
       }},
      {"converge.inputs",
       [](RunSettings& s, std::string_view v) { s.converge_inputs = size_in(v, "inputs", 1, kMaxSteps); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

std::vector<Setting> parse_config_text(std::string_view text, std::string_view origin) {
  std::vector<Setting> out;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(where, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where, "missing key");
    std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    out.push_back({std::move(full), std::string(trim(line.substr(eq + 1))), where});
  }
  return out;
}

std::vector<Setting> read_config_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

void apply_preset(RunSettings& settings, std::string_view preset) {
  if (preset == "paper") {
    settings.lengths = {10'000, 100'000};
  } else if (preset == "desk") {
    settings.lengths = {1'000, 20'000};
  } else {
    throw ValidationError("unknown preset '" + std::string(preset) + "' (expected paper or desk)");
  }
  settings.preset = std::string(preset);
}

void apply_setting(RunSettings& settings, const Setting& setting) {
  const auto& table = setters();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const auto& entry) { return entry.first == setting.key; });
  if (it == table.end()) {
    throw ConfigError(setting.key, "unknown key" + (setting.origin.empty() ? "" : " at " + setting.origin));
  }
  try {
    it->second(settings, setting.value);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(setting.key, e.what());
  }
}

RunSettings resolve_settings(const std::vector<Setting>& file, const std::vector<Setting>& flags) {
  RunSettings s;
  const Setting* preset = nullptr;
  for (const auto* list : {&file, &flags}) {
    for (const Setting& st : *list) {
      if (st.key == "run.preset") preset = &st;
    }
  }
  if (preset) apply_setting(s, *preset);
  for (const auto* list : {&file, &flags}) {
    for (const Setting& st : *list) {
      if (st.key != "run.preset") apply_setting(s, st);
    }
  }
  validate_settings(s);
  return s;
}

void validate_settings(const RunSettings& s) {
  auto guard = [](std::string_view key, auto&& check) {
    try {
      check();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string(key), e.what());
    }
  };
  guard("reservoir", [&] { s.reservoir.validate(); });
  guard("ipc", [&] { s.ipc.validate(); });
  guard("run", [&] { s.lengths.validate(); });
  if (s.sweep_axis) {
    guard("sweep.values", [&] {
      for (const std::string& v : s.sweep_values) apply_axis(s.reservoir, *s.sweep_axis, v);
    });
  }
}

nlohmann::json settings_json(const RunSettings& s) {
  nlohmann::json sweep = {{"axis", s.sweep_axis ? nlohmann::json(std::string(axis_name(*s.sweep_axis)))
                                                : nlohmann::json(nullptr)},
                          {"values", s.sweep_values}};
  return {{"preset", s.preset},
          {"reservoir", to_json(s.reservoir)},
          {"run",
           {{"length", s.lengths.length},
            {"washout", s.lengths.washout},
            {"seed", s.seed},
            {"realizations", s.realizations}}},
          {"ipc", to_json(s.ipc)},
          {"sweep", std::move(sweep)},
          {"converge", {{"dt_values", s.converge_dt}, {"inputs", s.converge_inputs}}}};
}

RunManifest make_manifest(std::string subcommand, RunSettings settings, std::filesystem::path out_dir) {
  RunManifest m;
  m.subcommand = std::move(subcommand);
  m.settings = std::move(settings);
  m.out_dir = std::move(out_dir);
  m.config_hash = fnv1a64(settings_json(m.settings).dump());
  return m;
}

nlohmann::json manifest_json(const RunManifest& m) {
  return {{"schema", kManifestSchema},
          {"subcommand", m.subcommand},
          {"version", m.version},
          {"config", settings_json(m.settings)},
          {"seed", m.settings.seed},
          {"out_dir", m.out_dir.string()},
          {"config_hash", hex64(m.config_hash)}};
}

RunManifest parse_config(std::string subcommand, const std::optional<std::filesystem::path>& path,
                         const std::vector<Setting>& flags, std::filesystem::path out_dir) {
  const std::vector<Setting> file = path ? read_config_file(*path) : std::vector<Setting>{};
  return make_manifest(std::move(subcommand), resolve_settings(file, flags), std::move(out_dir));
}

}  // namespace qrc
