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


#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qrc/errors.hpp"
#include "qrc/experiments.hpp"

using namespace qrc;

namespace {

SweepPlan small_plan() {
  SweepPlan plan;
  plan.base.n_qubits = 2;
  plan.axis = SweepAxis::kDt;
  plan.values = {"1", "4"};
  plan.realizations = 2;
  plan.lengths = {200, 2'000};
  plan.ipc.d_max = 3;
  plan.master_seed = 5;
  return plan;
}

}  // namespace

TEST_CASE("sweep axes") {
  CHECK(parse_axis("virtual_nodes") == SweepAxis::kVirtualNodes);
  CHECK(axis_name(SweepAxis::kObservableSet) == "observable_set");
  CHECK_THROWS_AS(parse_axis("temperature"), ValidationError);

  ReservoirConfig base;
  CHECK(apply_axis(base, SweepAxis::kDt, "0.5").dt == 0.5);
  CHECK(apply_axis(base, SweepAxis::kNQubits, "3").n_qubits == 3);
  CHECK(apply_axis(base, SweepAxis::kFieldH, "0.01").field_h == 0.01);
  CHECK(apply_axis(base, SweepAxis::kObservableSet, "xy+z").n_vars() == 25);
  CHECK_THROWS(apply_axis(base, SweepAxis::kDt, "-1"));
  CHECK_THROWS(apply_axis(base, SweepAxis::kVirtualNodes, "2.5"));

  CHECK(canonical_axis_value(SweepAxis::kDt, "10.0") == "10");
  CHECK(canonical_axis_value(SweepAxis::kDt, " 1e-1 ") == "0.1");
  CHECK(canonical_axis_value(SweepAxis::kObservableSet, "xy+z") == "z+xy");
}

TEST_CASE("seed splitting") {
  const RealizationSeeds a = realization_seeds(1, "10", 0);
  const RealizationSeeds b = realization_seeds(1, "10", 0);
  CHECK(a.couplings == b.couplings);
  CHECK(a.inputs == b.inputs);
  CHECK(a.couplings != a.inputs);
  CHECK(realization_seeds(1, "10", 1).inputs != a.inputs);
  CHECK(realization_seeds(1, "4", 0).inputs != a.inputs);
  CHECK(realization_seeds(2, "10", 0).inputs != a.inputs);
}

TEST_CASE("sweeps are reproducible and isolate failures") {
  SweepPlan plan = small_plan();
  plan.values = {"1", "oops", "4"};
  const FigureDataset d = run_sweep(plan);
  REQUIRE(d.points.size() == 3);
  CHECK(d.points[0].ok());
  CHECK_FALSE(d.points[1].ok());
  CHECK(d.points[1].error.find("dt") != std::string::npos);
  CHECK(d.points[2].ok());
  CHECK_FALSE(d.complete());
  for (const SweepPoint& p : {d.points[0], d.points[2]}) {
    REQUIRE(p.summary);
    CHECK(p.summary->count == 2);
    CHECK(p.reports.size() == 2);
    for (const CapacityReport& r : p.reports) {
      CHECK(r.total > 0.0);
      CHECK(r.metadata.config.dt == p.config.dt);
    }
  }

  const FigureDataset again = run_sweep(plan);
  CHECK(again.points[2].reports[1].total == d.points[2].reports[1].total);

  // dropping a value leaves the others untouched
  plan.values = {"4"};
  const FigureDataset only = run_sweep(plan);
  CHECK(only.points[0].reports[0].total == d.points[2].reports[0].total);
  CHECK(only.points[0].reports[0].metadata.input_seed == d.points[2].reports[0].metadata.input_seed);
}

TEST_CASE("sweep plan validation") {
  SweepPlan plan = small_plan();
  plan.values.clear();
  CHECK_THROWS_AS(run_sweep(plan), ValidationError);
  plan = small_plan();
  plan.realizations = 0;
  CHECK_THROWS_AS(run_sweep(plan), ValidationError);
}

TEST_CASE("inputs_to requires staying below") {
  ConvergenceCurve c;
  c.points = {{1, 1, 1.0}, {2, 2, 1e-5}, {3, 3, 2e-4}, {4, 4, 5e-5}, {5, 5, 1e-6}};
  CHECK(c.inputs_to(1e-4) == std::size_t{4});
  CHECK(c.inputs_to(1e-3) == std::size_t{2});
  CHECK_FALSE(c.inputs_to(1e-7).has_value());
}

TEST_CASE("convergence dataset") {
  ReservoirConfig c;
  const ConvergenceDataset d = run_convergence(c, {1.0, 10.0}, 120, 3);
  REQUIRE(d.curves.size() == 2);
  CHECK(d.curves[1].dt == 10.0);
  CHECK(d.curves[1].points.size() == 120);
  CHECK(d.curves[1].points.front().distance > 0.1);
  CHECK(d.curves[1].inputs_to(1e-4).has_value());
  const ConvergenceDataset same = run_convergence(c, {1.0, 10.0}, 120, 3);
  CHECK(same.curves[0].points.back().distance == d.curves[0].points.back().distance);
  CHECK_THROWS_AS(run_convergence(c, {}, 10, 1), ValidationError);
}

TEST_CASE("linear memory curve") {
  ReservoirConfig one;
  one.n_qubits = 1;
  one.coupling_scale = 0.0;
  IpcOptions ipc;
  ipc.d_max = 2;
  const CapacityReport r = run_realization(one, {1'000, 20'000}, ipc, realization_seeds(9, "x", 0));
  const auto curve = linear_memory_curve(r);
  REQUIRE(curve.size() == 151);
  CHECK(curve.front().delay == 0);
  CHECK(curve.front().capacity == doctest::Approx(1.0));
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].delay == curve[i - 1].delay + 1);
    CHECK(curve[i].capacity == 0.0);
  }
  const double sum = std::accumulate(curve.begin(), curve.end(), 0.0,
                                     [](double acc, const MemoryPoint& p) { return acc + p.capacity; });
  CHECK(std::abs(sum - r.per_degree_totals.at(1)) < 1e-12);
}

TEST_CASE("memory curve sums to the degree-1 total") {
  ReservoirConfig c;
  c.n_qubits = 3;
  IpcOptions ipc;
  ipc.d_max = 2;
  const CapacityReport r = run_realization(c, {500, 5'000}, ipc, realization_seeds(4, "m", 0));
  const auto curve = linear_memory_curve(r);
  double sum = 0.0;
  for (const MemoryPoint& p : curve) sum += p.capacity;
  CHECK(std::abs(sum - r.per_degree_totals.at(1)) < 1e-12);
  CHECK(curve.front().capacity > 0.5);
}
