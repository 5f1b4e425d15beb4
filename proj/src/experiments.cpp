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


#include "qrc/experiments.hpp"

#include <algorithm>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qrc/errors.hpp"
#include "qrc/random.hpp"
#include "qrc/text.hpp"

namespace qrc {

namespace {

constexpr std::pair<SweepAxis, std::string_view> kAxisNames[] = {
    {SweepAxis::kDt, "dt"},
    {SweepAxis::kNQubits, "n_qubits"},
    {SweepAxis::kVirtualNodes, "virtual_nodes"},
    {SweepAxis::kFieldH, "field_h"},
    {SweepAxis::kCouplingScale, "coupling_scale"},
    {SweepAxis::kObservableSet, "observable_set"},
};

int parse_count(std::string_view value, std::string_view what) {
  const long long n = parse_int(value, what);
  if (n < 1 || n > 1'000'000) {
    throw ValidationError(std::string(what) + ": " + std::string(value) + " is out of range");
  }
  return static_cast<int>(n);
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  for (const auto& [a, name] : kAxisNames) {
    if (a == axis) return name;
  }
  throw ValidationError("axis_name: unknown axis");
}

SweepAxis parse_axis(std::string_view name) {
  for (const auto& [a, n] : kAxisNames) {
    if (n == name) return a;
  }
  throw ValidationError("unknown sweep axis '" + std::string(name) +
                        "' (expected dt, n_qubits, virtual_nodes, field_h, coupling_scale or "
                        "observable_set)");
}

ReservoirConfig apply_axis(const ReservoirConfig& base, SweepAxis axis, std::string_view value) {
  ReservoirConfig c = base;
  switch (axis) {
    case SweepAxis::kDt: c.dt = parse_double(value, "dt"); break;
    case SweepAxis::kNQubits: c.n_qubits = parse_count(value, "n_qubits"); break;
    case SweepAxis::kVirtualNodes: c.virtual_nodes = parse_count(value, "virtual_nodes"); break;
    case SweepAxis::kFieldH: c.field_h = parse_double(value, "field_h"); break;
    case SweepAxis::kCouplingScale: c.coupling_scale = parse_double(value, "coupling_scale"); break;
    case SweepAxis::kObservableSet: c.observables = ObservableSet::parse(trim(value)); break;
  }
  c.validate();
  return c;
}

std::string canonical_axis_value(SweepAxis axis, std::string_view value) {
  switch (axis) {
    case SweepAxis::kDt:
    case SweepAxis::kFieldH:
    case SweepAxis::kCouplingScale:
      return format_double(parse_double(value, axis_name(axis)));
    case SweepAxis::kNQubits:
    case SweepAxis::kVirtualNodes:
      return std::to_string(parse_count(value, axis_name(axis)));
    case SweepAxis::kObservableSet:
      return ObservableSet::parse(trim(value)).to_string();
  }
  throw ValidationError("canonical_axis_value: unknown axis");
}

void RunLengths::validate() const {
  if (length < 1) throw ValidationError("length must be >= 1");
  if (washout < 1) throw ValidationError("washout must be >= 1");
}

RealizationSeeds realization_seeds(std::uint64_t master, std::string_view point_key,
                                   std::uint64_t realization) {
  const std::uint64_t point = derive_seed(master, SeedStream::kRealization, fnv1a64(point_key));
  const std::uint64_t child = derive_seed(point, SeedStream::kRealization, realization);
  return {derive_seed(child, SeedStream::kCouplings), derive_seed(child, SeedStream::kInputs)};
}

CapacityReport run_realization(const ReservoirConfig& config, const RunLengths& lengths,
                               const IpcOptions& ipc, const RealizationSeeds& seeds,
                               int realization) {
  lengths.validate();
  ReservoirConfig c = config;
  c.coupling_seed = seeds.couplings;
  const InputSequence inputs = InputSequence::generate(lengths.washout + lengths.length, seeds.inputs);
  const DesignMatrix design = run(c, inputs, lengths.washout);
  CapacityReport report = ipc_profile(design, inputs, lengths.washout, ipc);
  report.metadata.config = c;
  report.metadata.realization = realization;
  return report;
}

void SweepPlan::validate() const {
  if (values.empty()) throw ValidationError("sweep: axis values must be non-empty");
  if (realizations < 1) throw ValidationError("sweep: realizations must be >= 1");
  lengths.validate();
  ipc.validate();
}

bool FigureDataset::complete() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok(); });
}

FigureDataset run_sweep(const SweepPlan& plan) {
  plan.validate();
  FigureDataset out;
  out.axis = plan.axis;
  out.master_seed = plan.master_seed;
  out.realizations = plan.realizations;
  out.lengths = plan.lengths;
  out.ipc = plan.ipc;
  out.points.resize(plan.values.size());

  for (std::size_t i = 0; i < plan.values.size(); ++i) {
    SweepPoint& p = out.points[i];
    try {
      p.value = canonical_axis_value(plan.axis, plan.values[i]);
      p.config = apply_axis(plan.base, plan.axis, p.value);
      p.reports.resize(static_cast<std::size_t>(plan.realizations));
    } catch (const std::exception& e) {
      p.value = plan.values[i];
      p.error = e.what();
    }
  }

  struct Task {
    std::size_t point;
    int realization;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (!out.points[i].ok()) continue;
    for (int r = 0; r < plan.realizations; ++r) tasks.push_back({i, r});
  }
  std::vector<std::string> errors(tasks.size());

  auto execute = [&](std::size_t t) {
    const Task& task = tasks[t];
    SweepPoint& p = out.points[task.point];
    try {
      const RealizationSeeds seeds =
          realization_seeds(plan.master_seed, p.value, static_cast<std::uint64_t>(task.realization));
      p.reports[static_cast<std::size_t>(task.realization)] =
          run_realization(p.config, plan.lengths, plan.ipc, seeds, task.realization);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  };

  const auto n_tasks = static_cast<std::ptrdiff_t>(tasks.size());
  if (n_tasks >= worker_count()) {
    // one task per thread; inner loops fall back to serial
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < n_tasks; ++t) execute(static_cast<std::size_t>(t));
  } else {
    for (std::ptrdiff_t t = 0; t < n_tasks; ++t) execute(static_cast<std::size_t>(t));
  }

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    SweepPoint& p = out.points[tasks[t].point];
    if (!errors[t].empty() && p.error.empty()) {
      p.error = "realization " + std::to_string(tasks[t].realization) + ": " + errors[t];
    }
  }
  for (SweepPoint& p : out.points) {
    if (!p.ok()) {
      p.reports.clear();
      continue;
    }
    try {
      p.summary = aggregate_realizations(p.reports);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  }
  return out;
}

std::optional<std::size_t> ConvergenceCurve::inputs_to(double eps) const {
  std::optional<std::size_t> since;
  for (const ConvergencePoint& p : points) {
    if (p.distance < eps) {
      if (!since) since = p.inputs;
    } else {
      since.reset();
    }
  }
  return since;
}

ConvergenceDataset run_convergence(const ReservoirConfig& config, const std::vector<double>& dt_values,
                                   std::size_t n_inputs, std::uint64_t master_seed) {
  if (dt_values.empty()) throw ValidationError("converge: dt values must be non-empty");
  if (n_inputs < 1) throw ValidationError("converge: inputs must be >= 1");
  config.validate();

  ConvergenceDataset out;
  out.base = config;
  out.base.coupling_seed = derive_seed(master_seed, SeedStream::kCouplings);
  out.master_seed = master_seed;
  out.n_inputs = n_inputs;
  const InputSequence inputs =
      InputSequence::generate(n_inputs, derive_seed(master_seed, SeedStream::kInputs));
  const DensityMatrix<> zeros = all_zeros_state(config.n_qubits);
  const DensityMatrix<> ones = all_ones_state(config.n_qubits);

  out.curves.resize(dt_values.size());
  for (std::size_t i = 0; i < dt_values.size(); ++i) {
    ReservoirConfig c = out.base;
    c.dt = dt_values[i];
    c.virtual_nodes = 1;
    out.curves[i].dt = c.dt;
    out.curves[i].points = convergence_trace(c, zeros, ones, inputs);
  }
  return out;
}

std::vector<MemoryPoint> linear_memory_curve(const CapacityReport& report) {
  std::vector<MemoryPoint> curve;
  for (const CapacityRecord& r : report.records) {
    if (r.spec.total_degree() != 1) continue;
    curve.push_back({r.spec.terms().front().delay, r.above_threshold ? r.capacity : 0.0, r.capacity});
  }
  std::sort(curve.begin(), curve.end(),
            [](const MemoryPoint& a, const MemoryPoint& b) { return a.delay < b.delay; });
  return curve;
}

}  // namespace qrc
