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


// Acceptance suite: one PASS/FAIL line per criterion with the measured values.
// Usage: qrc_acceptance [criterion numbers...]   (default: all)

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qrc/experiments.hpp"
#include "qrc/ipc.hpp"
#include "qrc/random.hpp"
#include "qrc/reservoir.hpp"

using namespace qrc;

namespace {

constexpr std::uint64_t kMasterSeed = 2026;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ReservoirConfig benchmark() {
  ReservoirConfig c;  // N=5, h=1, Js=1, dt=10, V=1, z
  return c;
}

double mean_degree(const RealizationSummary& s, int d) {
  const auto it = s.per_degree.find(d);
  return it == s.per_degree.end() ? 0.0 : it->second.mean;
}

double nonlinear_mean(const RealizationSummary& s) {
  double sum = 0.0;
  for (const auto& [d, m] : s.per_degree) {
    if (d >= 2) sum += m.mean;
  }
  return sum;
}

double degree_at_least(const CapacityReport& r, int d0) {
  double sum = 0.0;
  for (const auto& [d, v] : r.per_degree_totals) {
    if (d >= d0) sum += v;
  }
  return sum;
}

const SweepPoint& require_ok(const SweepPoint& p) {
  if (!p.ok() || !p.summary) throw std::runtime_error("sweep point " + p.value + " failed: " + p.error);
  return p;
}

FigureDataset sweep(ReservoirConfig base, SweepAxis axis, std::vector<std::string> values, int realizations,
                    RunLengths lengths) {
  SweepPlan plan;
  plan.base = base;
  plan.axis = axis;
  plan.values = std::move(values);
  plan.realizations = realizations;
  plan.lengths = lengths;
  plan.master_seed = kMasterSeed;
  return run_sweep(plan);
}

Outcome single_qubit_oracle() {
  ReservoirConfig c;
  c.n_qubits = 1;
  c.coupling_scale = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  const CapacityReport r = run_realization(c, {1'000, 20'000}, {}, realization_seeds(kMasterSeed, "oracle", 0));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double at_origin = 0.0;
  for (const CapacityRecord& rec : r.records) {
    if (rec.above_threshold && rec.spec.size() == 1 && rec.spec.terms()[0].delay == 0 &&
        rec.spec.terms()[0].degree == 1) {
      at_origin = rec.capacity;
    }
  }
  const double elsewhere = r.total - at_origin;
  const bool pass = std::abs(r.total - 1.0) <= 0.005 && at_origin >= 1.0 - 1e-9 && elsewhere <= 0.005 &&
                    seconds < 10.0;
  return {pass, fmt("total %.6f, degree-1 delay-0 %.12f, other %.2e, %.2f s", r.total, at_origin, elsewhere,
                    seconds)};
}

Outcome capacity_bound() {
  Rng rng(kMasterSeed);
  const double dts[] = {0.5, 1.0, 4.0, 10.0, 20.0};
  const char* sets[] = {"z", "x", "x+z", "xy"};
  int failures = 0;
  double worst = 0.0;
  std::string worst_cfg;
  constexpr int kConfigs = 24;
  for (int i = 0; i < kConfigs; ++i) {
    ReservoirConfig c;
    c.n_qubits = 1 + static_cast<int>(rng.below(4));
    c.dt = dts[rng.below(5)];
    c.field_h = rng.uniform(0.1, 2.0);
    c.coupling_scale = rng.uniform(0.2, 2.0);
    c.virtual_nodes = 1 + static_cast<int>(rng.below(3));
    const char* obs = sets[rng.below(4)];
    c.observables = ObservableSet::parse(c.n_qubits == 1 && std::string(obs) == "xy" ? "z" : obs);
    const CapacityReport r =
        run_realization(c, {1'000, 10'000}, {}, realization_seeds(kMasterSeed, "bound", static_cast<unsigned>(i)));
    const double ratio = r.total / static_cast<double>(r.n_vars);
    if (!r.within_bound()) ++failures;
    if (ratio > worst) {
      worst = ratio;
      worst_cfg = fmt("N=%d dt=%g V=%d %s", c.n_qubits, c.dt, c.virtual_nodes, c.observables.to_string().c_str());
    }
  }
  return {failures == 0, fmt("%d configs, %d over n_vars*1.02, worst total/n_vars %.4f (%s)", kConfigs, failures,
                             worst, worst_cfg.c_str())};
}

Outcome benchmark_saturation() {
  const FigureDataset d = sweep(benchmark(), SweepAxis::kDt, {"10"}, 10, {10'000, 100'000});
  const SweepPoint& p = require_ok(d.points[0]);
  const RealizationSummary& s = *p.summary;
  const double nonlinear = nonlinear_mean(s);
  const double d23 = mean_degree(s, 2) + mean_degree(s, 3);
  bool every_nonlinear = true;
  for (const CapacityReport& r : p.reports) every_nonlinear = every_nonlinear && degree_at_least(r, 2) > 0.0;
  const bool pass = s.normalized_total.mean >= 0.95 && s.normalized_total.mean <= 1.05 && nonlinear > 0.0 &&
                    every_nonlinear && d23 > 0.5 * nonlinear;
  return {pass, fmt("normalized %.4f +/- %.4f, degree>=2 %.4f (every run %s), degree 2+3 share of nonlinear %.3f",
                    s.normalized_total.mean, s.normalized_total.stddev, nonlinear, every_nonlinear ? "yes" : "no",
                    nonlinear > 0 ? d23 / nonlinear : 0.0)};
}

Outcome linear_regime() {
  const FigureDataset d = sweep(benchmark(), SweepAxis::kDt, {"0.1"}, 10, {10'000, 100'000});
  const RealizationSummary& s = *require_ok(d.points[0]).summary;
  const double share = s.total.mean > 0 ? mean_degree(s, 1) / s.total.mean : 0.0;
  const bool pass = share > 0.9 && s.normalized_total.mean < 0.95;
  return {pass, fmt("degree-1 share %.4f, normalized %.4f +/- %.4f", share, s.normalized_total.mean,
                    s.normalized_total.stddev)};
}

Outcome fading_memory() {
  const ConvergenceDataset d = run_convergence(benchmark(), {4.0, 10.0, 20.0}, 300, kMasterSeed);
  std::vector<double> counts;
  std::string detail;
  bool reached = true;
  for (const ConvergenceCurve& c : d.curves) {
    const auto n = c.inputs_to(1e-4);
    reached = reached && n.has_value();
    counts.push_back(n ? static_cast<double>(*n) : 1e9);
    detail += fmt("dt=%g: %s  ", c.dt, n ? std::to_string(*n).c_str() : "never");
  }
  const double at10 = counts[1];
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  const bool pass = reached && at10 <= 100 && *hi <= 2.0 * *lo;
  return {pass, fmt("inputs to 1e-4: %sspread %.2fx", detail.c_str(), *hi / *lo)};
}

Outcome virtual_nodes() {
  const FigureDataset d = sweep(benchmark(), SweepAxis::kVirtualNodes, {"1", "10", "50"}, 3, {1'000, 20'000});
  const RealizationSummary& v1 = *require_ok(d.points[0]).summary;
  const RealizationSummary& v10 = *require_ok(d.points[1]).summary;
  const RealizationSummary& v50 = *require_ok(d.points[2]).summary;
  double high1 = 0.0, high10 = 0.0;
  for (const CapacityReport& r : d.points[0].reports) high1 += degree_at_least(r, 4) / 3.0;
  for (const CapacityReport& r : d.points[1].reports) high10 += degree_at_least(r, 4) / 3.0;
  const bool grows = v10.total.mean > v1.total.mean;
  const bool degrades = v50.normalized_total.mean < v10.normalized_total.mean;
  const bool high_order = high10 > 0.0 && high1 == 0.0;
  return {grows && degrades && high_order,
          fmt("total V1 %.3f < V10 %.3f [%s]; normalized V50 %.4f < V10 %.4f [%s]; degree>=4 V10 %.4f, V1 %.4f [%s]",
              v1.total.mean, v10.total.mean, grows ? "ok" : "fail", v50.normalized_total.mean,
              v10.normalized_total.mean, degrades ? "ok" : "fail", high10, high1, high_order ? "ok" : "fail")};
}

Outcome correlation_observables() {
  ReservoirConfig c = benchmark();
  c.virtual_nodes = 10;
  c.observables = ObservableSet::parse("xy");
  const FigureDataset d = sweep(c, SweepAxis::kObservableSet, {"xy"}, 3, {10'000, 100'000});
  const RealizationSummary& s = *require_ok(d.points[0]).summary;
  const bool pass = s.n_vars == 200 && s.normalized_total.mean >= 0.9;
  return {pass, fmt("n_vars %zu, normalized %.4f +/- %.4f", s.n_vars, s.normalized_total.mean,
                    s.normalized_total.stddev)};
}

Outcome regression_equivalence() {
  Rng rng(kMasterSeed + 8);
  double worst = 0.0;
  constexpr std::size_t kWashout = 20, kLength = 500;
  const auto specs = enumerate_targets(4, WindowPolicy::uniform(kWashout));
  for (int i = 0; i < 100; ++i) {
    const InputSequence in = InputSequence::generate(kWashout + kLength, rng.next());
    Eigen::MatrixXd x;
    if (i % 2 == 0) {
      ReservoirConfig c;
      c.n_qubits = 1 + static_cast<int>(rng.below(4));
      c.virtual_nodes = 1 + static_cast<int>(rng.below(2));
      c.coupling_seed = rng.next();
      x = run(c, in, kWashout).values;
    } else {
      const auto n = static_cast<Eigen::Index>(1 + rng.below(8));
      x.resize(static_cast<Eigen::Index>(kLength), n + 1);
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < x.rows(); ++k) x(k, j) = rng.uniform(-1, 1);
      x.col(n).setOnes();
    }
    const TargetSpec& spec = specs[rng.below(specs.size())];
    const Eigen::VectorXd y = target_series(in, spec, kWashout);
    const double direct = ReadoutProjector(x).capacity(y);
    const Eigen::MatrixXd gram_pinv = (x.transpose() * x).completeOrthogonalDecomposition().pseudoInverse();
    const double proj = y.dot(x * (gram_pinv * (x.transpose() * y))) / y.squaredNorm();
    worst = std::max(worst, std::abs(direct - proj));
  }
  return {worst < 1e-10, fmt("100 instances, max |difference| %.2e", worst)};
}

Outcome target_orthogonality() {
  constexpr std::size_t kWashout = 200, kLength = 100'000;
  const InputSequence in = InputSequence::generate(kWashout + kLength, derive_seed(kMasterSeed, SeedStream::kInputs));
  const auto specs = enumerate_targets(9, WindowPolicy{});
  const TargetBuilder builder(in, kWashout, 9);
  Rng rng(kMasterSeed + 9);
  const double bound = 5.0 / std::sqrt(static_cast<double>(kLength));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t a = rng.below(specs.size());
    std::size_t b = a;
    while (b == a) b = rng.below(specs.size());
    const double m = builder.series(specs[a]).dot(builder.series(specs[b])) / static_cast<double>(kLength);
    worst = std::max(worst, std::abs(m));
  }
  return {worst < bound, fmt("50 pairs, max |cross-moment| %.2e vs bound %.2e", worst, bound)};
}

Outcome field_sweep() {
  const FigureDataset d = sweep(benchmark(), SweepAxis::kFieldH, {"0.01", "0.1", "1", "10"}, 3, {1'000, 20'000});
  const RealizationSummary& weak = *require_ok(d.points[0]).summary;
  const RealizationSummary& unit = *require_ok(d.points[2]).summary;
  const double share = weak.total.mean > 0 ? mean_degree(weak, 1) / weak.total.mean : 0.0;
  const bool weak_ok = weak.normalized_total.mean < 0.9 && share > 0.9;
  const bool unit_ok = unit.normalized_total.mean >= 0.92 && nonlinear_mean(unit) > 0.0;
  std::string others;
  for (const SweepPoint& p : d.points) {
    if (p.ok() && p.summary) others += fmt("h=%s %.3f ", p.value.c_str(), p.summary->normalized_total.mean);
  }
  return {weak_ok && unit_ok,
          fmt("h=0.01 normalized %.4f, degree-1 share %.4f [%s]; h=1 normalized %.4f, nonlinear %.4f [%s]; %s",
              weak.normalized_total.mean, share, weak_ok ? "ok" : "fail", unit.normalized_total.mean,
              nonlinear_mean(unit), unit_ok ? "ok" : "fail", others.c_str())};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "single-qubit oracle", single_qubit_oracle},
      {2, "capacity bound", capacity_bound},
      {3, "benchmark saturation", benchmark_saturation},
      {4, "linear regime at small dt", linear_regime},
      {5, "fading memory", fading_memory},
      {6, "virtual nodes", virtual_nodes},
      {7, "correlation observables", correlation_observables},
      {8, "regression equivalence", regression_equivalence},
      {9, "target orthogonality", target_orthogonality},
      {10, "field sweep", field_sweep},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-26s %s  %s  (%.1f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
