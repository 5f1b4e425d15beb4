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


// Run configuration: flat "key = value" text with optional [section]
// headers, resolved as defaults < preset < file < command-line flags.
//
//   # benchmark
//   [reservoir]
//   n_qubits = 5
//   observables = xy+z
//   [ipc.window]
//   degree2_max_delay = 30
//
// A key outside any section may carry its section inline ("run.length").
// Unknown keys and out-of-range values raise ConfigError naming the key.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qrc/experiments.hpp"
#include "qrc/ipc.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

inline constexpr std::string_view kVersion = "0.1.0";

struct Setting {
  std::string key;  // fully qualified, e.g. "reservoir.dt"
  std::string value;
  std::string origin;  // "file.cfg:12" or "--dt"
};

/// Everything a subcommand needs, with all defaults materialized.
struct RunSettings {
  std::string preset = "paper";
  ReservoirConfig reservoir;
  RunLengths lengths;
  IpcOptions ipc;
  std::uint64_t seed = 1;
  int realizations = 10;
  std::optional<SweepAxis> sweep_axis;
  std::vector<std::string> sweep_values;
  std::vector<double> converge_dt{0.1, 1.0, 4.0, 10.0, 20.0};
  std::size_t converge_inputs = 300;
};

/// Every accepted key, in canonical order.
const std::vector<std::string_view>& config_keys();

std::vector<Setting> parse_config_text(std::string_view text, std::string_view origin);
std::vector<Setting> read_config_file(const std::filesystem::path& path);

/// "paper": L = 1e5, washout 1e4. "desk": L = 2e4, washout 1e3.
void apply_preset(RunSettings& settings, std::string_view preset);

/// Sets one key; throws ConfigError(key) for unknown keys or bad values.
void apply_setting(RunSettings& settings, const Setting& setting);

/// Defaults, then the preset (flag beats file), then file, then flags.
RunSettings resolve_settings(const std::vector<Setting>& file, const std::vector<Setting>& flags);

/// Cross-field checks after all keys are applied.
void validate_settings(const RunSettings& settings);

/// Canonical key → value map of the resolved settings.
nlohmann::json settings_json(const RunSettings& settings);

struct RunManifest {
  std::string subcommand;
  RunSettings settings;
  std::filesystem::path out_dir;
  std::string version{kVersion};
  std::uint64_t config_hash = 0;  // fnv1a64 of settings_json(settings).dump()
};

RunManifest make_manifest(std::string subcommand, RunSettings settings, std::filesystem::path out_dir);

nlohmann::json manifest_json(const RunManifest& manifest);

/// Builds a manifest from an optional config file plus flag settings.
RunManifest parse_config(std::string subcommand, const std::optional<std::filesystem::path>& path,
                         const std::vector<Setting>& flags, std::filesystem::path out_dir);

}  // namespace qrc
