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


// JSON documents and flat CSV tables for every result type.
//
// JSON keys are sorted and every document carries a "schema" field. CSV files
// use a header row, commas, LF line endings and shortest round-trip doubles,
// so identical inputs give byte-identical files.

#pragma once

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/experiments.hpp"
#include "qrc/ipc.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

inline constexpr std::string_view kReportSchema = "qrc-ipc/capacity-report/1";
inline constexpr std::string_view kSweepSchema = "qrc-ipc/sweep/1";
inline constexpr std::string_view kConvergenceSchema = "qrc-ipc/convergence/1";
inline constexpr std::string_view kMemorySchema = "qrc-ipc/memory-curve/1";
inline constexpr std::string_view kManifestSchema = "qrc-ipc/manifest/1";

/// Run-level bookkeeping echoed into dataset documents.
struct Provenance {
  std::string version;
  std::string config_hash;  // 16 hex digits
  std::string started;      // ISO 8601 UTC
  std::string finished;
};

nlohmann::json to_json(const ReservoirConfig& config);
nlohmann::json to_json(const IpcOptions& options);
nlohmann::json to_json(const RunLengths& lengths);
nlohmann::json to_json(const RealizationSummary& summary);

/// Above-threshold records plus the whole degree-1 curve.
nlohmann::json report_json(const CapacityReport& report);
nlohmann::json sweep_json(const FigureDataset& data, const Provenance& provenance);
nlohmann::json convergence_json(const ConvergenceDataset& data, const Provenance& provenance);
nlohmann::json memory_curve_json(const std::vector<MemoryPoint>& curve, const CapacityReport& report);

/// degree,n_terms,delays,degrees,capacity,above_threshold (every record).
void write_records_csv(std::ostream& out, const CapacityReport& report);
/// One column per design-matrix label, one row per evaluation step.
void write_design_csv(std::ostream& out, const DesignMatrix& design);
/// One row per (axis value, degree).
void write_sweep_csv(std::ostream& out, const FigureDataset& data);
/// dt,inputs,time,distance
void write_convergence_csv(std::ostream& out, const ConvergenceDataset& data);
/// delay,capacity,raw_capacity
void write_memory_csv(std::ostream& out, const std::vector<MemoryPoint>& curve);

/// 16 lower-case hex digits.
std::string hex64(std::uint64_t value);

/// Current UTC time, "2026-01-31T12:00:00Z".
std::string utc_timestamp();

/// Writes atomically enough for our purposes: temp file, then rename.
/// Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace qrc
