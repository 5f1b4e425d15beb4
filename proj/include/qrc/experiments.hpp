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

// Multi-realization sweeps, convergence traces and linear memory curves.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/ipc.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

enum class SweepAxis { kDt, kNQubits, kVirtualNodes, kFieldH, kCouplingScale, kObservableSet };

/// "dt", "n_qubits", "virtual_nodes", "field_h", "coupling_scale", "observable_set".
std::string_view axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

/// Copy of `base` with the axis parameter set from its textual value.
ReservoirConfig apply_axis(const ReservoirConfig& base, SweepAxis axis, std::string_view value);

/// Canonical text of an axis value ("10", "0.1", "xy+z"); seeds are keyed on it.
std::string canonical_axis_value(SweepAxis axis, std::string_view value);

struct RunLengths {
  std::size_t washout = 10'000;
  std::size_t length = 100'000;  // evaluation steps after washout

  void validate() const;
};

struct RealizationSeeds {
  std::uint64_t couplings = 0;
  std::uint64_t inputs = 0;
};

/// master → point = derive(master, realization, fnv1a(key)) →
/// r-th child = derive(point, realization, r) → one seed per stream.
RealizationSeeds realization_seeds(std::uint64_t master, std::string_view point_key,
                                   std::uint64_t realization);

/// One reservoir run plus its capacity profile.
CapacityReport run_realization(const ReservoirConfig& config, const RunLengths& lengths,
                               const IpcOptions& ipc, const RealizationSeeds& seeds,
                               int realization = 0);

struct SweepPlan {
  ReservoirConfig base;
  SweepAxis axis = SweepAxis::kDt;
  std::vector<std::string> values;
  int realizations = 10;
  RunLengths lengths;
  IpcOptions ipc;
  std::uint64_t master_seed = 1;

  void validate() const;
};

struct SweepPoint {
  std::string value;  // canonical
  ReservoirConfig config;
  std::vector<CapacityReport> reports;  // ordered by realization
  std::optional<RealizationSummary> summary;
  std::string error;  // non-empty if this value aborted

  bool ok() const noexcept { return error.empty(); }
};

struct FigureDataset {
  SweepAxis axis = SweepAxis::kDt;
  std::vector<SweepPoint> points;  // plan order
  std::uint64_t master_seed = 0;
  int realizations = 0;
  RunLengths lengths;
  IpcOptions ipc;

  bool complete() const;
};

/// Points and realizations run in parallel; results are stored by index, so
/// the dataset is independent of scheduling. A failing value records its
/// error and the others proceed.
FigureDataset run_sweep(const SweepPlan& plan);

struct ConvergenceCurve {
  double dt = 0.0;
  std::vector<ConvergencePoint> points;

  /// Inputs after which the distance stays below eps; nullopt if never.
  std::optional<std::size_t> inputs_to(double eps) const;
};

struct ConvergenceDataset {
  ReservoirConfig base;
  std::uint64_t master_seed = 0;
  std::size_t n_inputs = 0;
  std::vector<ConvergenceCurve> curves;
};

/// |0…0⟩ versus |1…1⟩ for each Δt under one shared input sequence.
ConvergenceDataset run_convergence(const ReservoirConfig& config, const std::vector<double>& dt_values,
                                   std::size_t n_inputs, std::uint64_t master_seed);

struct MemoryPoint {
  int delay = 0;
  double capacity = 0.0;      // zero when below threshold
  double raw_capacity = 0.0;  // as measured
};

/// Degree-1 records ordered by delay.
std::vector<MemoryPoint> linear_memory_curve(const CapacityReport& report);

}  // namespace qrc
