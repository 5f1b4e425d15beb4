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

#include "qrc/ipc.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "qrc/legendre.hpp"
#include "qrc/random.hpp"

namespace qrc {

// ---------------------------------------------------------------------------
// TargetSpec

TargetSpec::TargetSpec(std::vector<TargetTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("TargetSpec: at least one term is required");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].delay < 0) throw ValidationError("TargetSpec: negative delay");
    if (terms_[i].degree < 1) throw ValidationError("TargetSpec: term degree must be >= 1");
    if (i > 0 && terms_[i].delay <= terms_[i - 1].delay) {
      throw ValidationError("TargetSpec: delays must be strictly increasing");
    }
    total_degree_ += terms_[i].degree;
  }
}

std::string TargetSpec::to_string() const {
  std::string out;
  for (const TargetTerm& t : terms_) {
    if (!out.empty()) out += ',';
    out += std::to_string(t.delay) + ":" + std::to_string(t.degree);
  }
  return out;
}

std::string TargetSpec::delay_list() const {
  std::string out;
  for (const TargetTerm& t : terms_) {
    if (!out.empty()) out += ';';
    out += std::to_string(t.delay);
  }
  return out;
}

std::string TargetSpec::degree_list() const {
  std::string out;
  for (const TargetTerm& t : terms_) {
    if (!out.empty()) out += ';';
    out += std::to_string(t.degree);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Windows and enumeration

WindowPolicy::Window WindowPolicy::window(int degree) const {
  if (degree < 1) throw ValidationError("WindowPolicy: degree must be >= 1");
  if (degree == 1) return {delay_origin, degree1_max_delay, 1};
  if (degree == 2) return {delay_origin, degree2_max_delay, 2};
  if (degree <= 4) return {delay_origin, degree3_4_max_delay, degree};
  return {delay_origin, high_degree_max_delay, std::min(degree, high_degree_max_terms)};
}

void WindowPolicy::validate() const {
  if (delay_origin < 0) throw ValidationError("delay_origin must be >= 0");
  for (int max_delay : {degree1_max_delay, degree2_max_delay, degree3_4_max_delay,
                        high_degree_max_delay}) {
    if (max_delay < delay_origin) {
      throw ValidationError("window max delay must be >= delay_origin");
    }
  }
  if (degree1_block < 1) throw ValidationError("degree1_block must be >= 1");
  if (high_degree_max_terms < 1) throw ValidationError("high_degree_max_terms must be >= 1");
}

WindowPolicy WindowPolicy::uniform(int max_delay, int delay_origin) {
  WindowPolicy p;
  p.delay_origin = delay_origin;
  p.degree1_max_delay = max_delay;
  p.degree1_extend = false;
  p.degree2_max_delay = max_delay;
  p.degree3_4_max_delay = max_delay;
  p.high_degree_max_delay = max_delay;
  p.high_degree_max_terms = kMaxLegendreDegree;
  return p;
}

namespace {

// Calls f(parts) for every composition of `total` into `k` positive parts.
template <typename F>
void for_each_composition(int total, int k, std::vector<int>& parts, F&& f) {
  if (k == 1) {
    parts.push_back(total);
    f(parts);
    parts.pop_back();
    return;
  }
  for (int first = 1; first <= total - (k - 1); ++first) {
    parts.push_back(first);
    for_each_composition(total - first, k - 1, parts, f);
    parts.pop_back();
  }
}

// Calls f(delays) for every k-subset of [lo, hi] in lexicographic order.
template <typename F>
void for_each_subset(int lo, int hi, int k, std::vector<int>& delays, F&& f) {
  if (k == 0) {
    f(delays);
    return;
  }
  for (int d = lo; d <= hi - (k - 1); ++d) {
    delays.push_back(d);
    for_each_subset(d + 1, hi, k - 1, delays, f);
    delays.pop_back();
  }
}

bool spec_less(const TargetSpec& a, const TargetSpec& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const bool delays_less = std::lexicographical_compare(
      ta.begin(), ta.end(), tb.begin(), tb.end(),
      [](const TargetTerm& x, const TargetTerm& y) { return x.delay < y.delay; });
  const bool delays_greater = std::lexicographical_compare(
      tb.begin(), tb.end(), ta.begin(), ta.end(),
      [](const TargetTerm& x, const TargetTerm& y) { return x.delay < y.delay; });
  if (delays_less || delays_greater) return delays_less;
  return std::lexicographical_compare(
      ta.begin(), ta.end(), tb.begin(), tb.end(),
      [](const TargetTerm& x, const TargetTerm& y) { return x.degree < y.degree; });
}

}  // namespace

std::vector<TargetSpec> enumerate_degree(int degree, int min_delay, int max_delay, int max_terms) {
  if (degree < 1) throw ValidationError("enumerate_degree: degree must be >= 1");
  if (min_delay < 0 || max_delay < min_delay) {
    throw ValidationError("enumerate_degree: invalid delay window");
  }
  std::vector<TargetSpec> out;
  const int k_max = std::min({degree, max_terms, max_delay - min_delay + 1});
  std::vector<int> delays;
  std::vector<int> parts;
  for (int k = 1; k <= k_max; ++k) {
    for_each_subset(min_delay, max_delay, k, delays, [&](const std::vector<int>& ds) {
      for_each_composition(degree, k, parts, [&](const std::vector<int>& ps) {
        std::vector<TargetTerm> terms(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) terms[i] = {ds[i], ps[i]};
        out.emplace_back(std::move(terms));
      });
    });
  }
  std::sort(out.begin(), out.end(), spec_less);
  return out;
}

std::vector<TargetSpec> enumerate_targets(int d_max, const WindowPolicy& policy) {
  if (d_max < 1) throw ValidationError("enumerate_targets: d_max must be >= 1");
  policy.validate();
  std::vector<TargetSpec> out;
  for (int d = 1; d <= d_max; ++d) {
    const WindowPolicy::Window w = policy.window(d);
    std::vector<TargetSpec> specs = enumerate_degree(d, w.min_delay, w.max_delay, w.max_terms);
    out.insert(out.end(), std::make_move_iterator(specs.begin()),
               std::make_move_iterator(specs.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Target series

namespace {

void check_target_window(std::size_t n_inputs, const TargetSpec& spec, std::size_t washout) {
  if (washout >= n_inputs) {
    throw ValidationError("target: washout must be smaller than the input length");
  }
  if (static_cast<std::size_t>(spec.max_delay()) > washout) {
    throw ValidationError("target: delay " + std::to_string(spec.max_delay()) +
                          " exceeds washout " + std::to_string(washout));
  }
}

}  // namespace

Eigen::VectorXd target_series(const InputSequence& inputs, const TargetSpec& spec,
                              std::size_t washout) {
  check_target_window(inputs.size(), spec, washout);
  const std::size_t length = inputs.size() - washout;
  Eigen::VectorXd y(static_cast<Eigen::Index>(length));
  for (std::size_t row = 0; row < length; ++row) {
    const std::size_t k = washout + row;
    double value = 1.0;
    for (const TargetTerm& t : spec.terms()) {
      value *= legendre(t.degree, inputs.scaled(k - static_cast<std::size_t>(t.delay)));
    }
    y(static_cast<Eigen::Index>(row)) = value;
  }
  return y;
}

TargetBuilder::TargetBuilder(const InputSequence& inputs, std::size_t washout, int max_degree)
    : washout_(washout) {
  if (washout >= inputs.size()) {
    throw ValidationError("TargetBuilder: washout must be smaller than the input length");
  }
  if (max_degree < 1 || max_degree > kMaxLegendreDegree) {
    throw ValidationError("TargetBuilder: max_degree out of range");
  }
  length_ = static_cast<Eigen::Index>(inputs.size() - washout);
  const auto n = static_cast<Eigen::Index>(inputs.size());
  table_.resize(max_degree + 1, n);
  std::vector<double> column(static_cast<std::size_t>(max_degree) + 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    legendre_all(inputs.scaled(static_cast<std::size_t>(k)), std::span<double>(column));
    for (int d = 0; d <= max_degree; ++d) table_(d, k) = column[static_cast<std::size_t>(d)];
  }
}

void TargetBuilder::fill(const TargetSpec& spec, Eigen::Ref<Eigen::VectorXd> out) const {
  if (static_cast<std::size_t>(spec.max_delay()) > washout_) {
    throw ValidationError("TargetBuilder: delay " + std::to_string(spec.max_delay()) +
                          " exceeds washout " + std::to_string(washout_));
  }
  if (out.size() != length_) throw ValidationError("TargetBuilder: output length mismatch");
  bool first = true;
  for (const TargetTerm& t : spec.terms()) {
    if (t.degree > max_degree()) {
      throw ValidationError("TargetBuilder: term degree exceeds table degree");
    }
    const auto start = static_cast<Eigen::Index>(washout_) - t.delay;
    const auto row = table_.row(t.degree).segment(start, length_).transpose();
    if (first) {
      out = row;
      first = false;
    } else {
      out.array() *= row.array();
    }
  }
}

Eigen::VectorXd TargetBuilder::series(const TargetSpec& spec) const {
  Eigen::VectorXd y(length_);
  fill(spec, y);
  return y;
}

// ---------------------------------------------------------------------------
// Capacity

ReadoutProjector::ReadoutProjector(const Eigen::MatrixXd& design) : rows_(design.rows()) {
  if (design.rows() < 1 || design.cols() < 1) {
    throw ValidationError("ReadoutProjector: empty design matrix");
  }
  if (!design.allFinite()) throw ValidationError("ReadoutProjector: non-finite design entry");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU);
  singular_values_ = svd.singularValues();
  const double cutoff =
      singular_values_.size() > 0 ? kRelativeCutoff * singular_values_(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < singular_values_.size() && singular_values_(rank) > cutoff) ++rank;
  basis_ = svd.matrixU().leftCols(rank);
}

double ReadoutProjector::capacity(const Eigen::Ref<const Eigen::VectorXd>& target) const {
  if (target.size() != rows_) {
    throw ValidationError("capacity: target length " + std::to_string(target.size()) +
                          " does not match design rows " + std::to_string(rows_));
  }
  const double energy = target.squaredNorm();
  if (!(energy > 0.0)) throw DomainError("capacity: target has zero mean square");
  // ‖y − QQᵀy‖² = ‖y‖² − ‖Qᵀy‖² for orthonormal Q.
  const double explained = (basis_.transpose() * target).squaredNorm();
  return std::clamp(explained / energy, 0.0, 1.0);
}

Eigen::VectorXd ReadoutProjector::capacities(const Eigen::Ref<const Eigen::MatrixXd>& targets) const {
  if (targets.rows() != rows_) {
    throw ValidationError("capacities: target length does not match design rows");
  }
  const Eigen::MatrixXd projected = basis_.transpose() * targets;
  Eigen::VectorXd out(targets.cols());
  for (Eigen::Index j = 0; j < targets.cols(); ++j) {
    const double energy = targets.col(j).squaredNorm();
    if (!(energy > 0.0)) throw DomainError("capacity: target has zero mean square");
    out(j) = std::clamp(projected.col(j).squaredNorm() / energy, 0.0, 1.0);
  }
  return out;
}

double capacity(const DesignMatrix& design, const Eigen::VectorXd& target) {
  return ReadoutProjector(design.values).capacity(target);
}

std::vector<double> evaluate_capacities(const ReadoutProjector& projector,
                                        const TargetBuilder& builder,
                                        std::span<const TargetSpec> specs, Eigen::Index batch) {
  if (builder.length() != projector.rows()) {
    throw ValidationError("evaluate_capacities: target length does not match design rows");
  }
  batch = std::max<Eigen::Index>(1, batch);
  std::vector<double> out(specs.size());
  const auto n_specs = static_cast<Eigen::Index>(specs.size());
  const Eigen::Index n_batches = (n_specs + batch - 1) / batch;
#pragma omp parallel
  {
    Eigen::MatrixXd targets(builder.length(), std::min(batch, std::max<Eigen::Index>(n_specs, 1)));
#pragma omp for schedule(dynamic)
    for (Eigen::Index b = 0; b < n_batches; ++b) {
      const Eigen::Index begin = b * batch;
      const Eigen::Index count = std::min(batch, n_specs - begin);
      for (Eigen::Index i = 0; i < count; ++i) {
        builder.fill(specs[static_cast<std::size_t>(begin + i)], targets.col(i));
      }
      const Eigen::VectorXd caps = projector.capacities(targets.leftCols(count));
      for (Eigen::Index i = 0; i < count; ++i) out[static_cast<std::size_t>(begin + i)] = caps(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Threshold

void IpcOptions::validate() const {
  if (d_max < 1 || d_max > kMaxLegendreDegree) throw ValidationError("d_max out of range");
  windows.validate();
  if (surrogates < 1) throw ValidationError("surrogates must be >= 1");
  if (!(threshold_factor > 0.0)) throw ValidationError("threshold_factor must be > 0");
  if (samples_per_degree < 1) throw ValidationError("samples_per_degree must be >= 1");
  if (batch < 1) throw ValidationError("batch must be >= 1");
}

namespace {

// Null targets whose factor `keep[i]` is taken from the true inputs and every
// other factor from the surrogate. Single-factor specs come from the surrogate.
std::vector<double> anchored_capacities(const ReadoutProjector& projector,
                                        const TargetBuilder& anchor,
                                        const TargetBuilder& surrogate,
                                        std::span<const TargetSpec> specs,
                                        std::span<const std::size_t> keep, Eigen::Index batch) {
  std::vector<double> out(specs.size());
  const auto n_specs = static_cast<Eigen::Index>(specs.size());
  const Eigen::Index n_batches = (n_specs + batch - 1) / batch;
#pragma omp parallel
  {
    Eigen::MatrixXd targets(surrogate.length(), std::min(batch, std::max<Eigen::Index>(n_specs, 1)));
    Eigen::VectorXd factor(surrogate.length());
#pragma omp for schedule(dynamic)
    for (Eigen::Index b = 0; b < n_batches; ++b) {
      const Eigen::Index begin = b * batch;
      const Eigen::Index count = std::min(batch, n_specs - begin);
      for (Eigen::Index i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(begin + i);
        const TargetSpec& spec = specs[idx];
        if (spec.size() < 2) {
          surrogate.fill(spec, targets.col(i));
          continue;
        }
        std::vector<TargetTerm> rest;
        for (std::size_t t = 0; t < spec.size(); ++t) {
          if (t != keep[idx]) rest.push_back(spec.terms()[t]);
        }
        surrogate.fill(TargetSpec(std::move(rest)), targets.col(i));
        anchor.fill(TargetSpec({spec.terms()[keep[idx]]}), factor);
        targets.col(i).array() *= factor.array();
      }
      const Eigen::VectorXd caps = projector.capacities(targets.leftCols(count));
      for (Eigen::Index i = 0; i < count; ++i) out[static_cast<std::size_t>(begin + i)] = caps(i);
    }
  }
  return out;
}

}  // namespace

double estimate_threshold(const ReadoutProjector& projector, const InputSequence& inputs,
                          std::size_t washout, const IpcOptions& options) {
  options.validate();
  std::vector<std::vector<TargetSpec>> by_degree;
  for (int d = 1; d <= options.d_max; ++d) {
    const WindowPolicy::Window w = options.windows.window(d);
    const int max_delay = std::min(w.max_delay, static_cast<int>(washout));
    by_degree.push_back(max_delay >= w.min_delay
                            ? enumerate_degree(d, w.min_delay, max_delay, w.max_terms)
                            : std::vector<TargetSpec>{});
  }

  double largest = 0.0;
  std::optional<TargetBuilder> anchor;
  for (int r = 0; r < options.surrogates; ++r) {
    const auto replay = static_cast<std::uint64_t>(r);
    const InputSequence surrogate =
        InputSequence::generate(inputs.size(), derive_seed(inputs.seed(), SeedStream::kSurrogates, replay));
    Rng pick(derive_seed(inputs.seed(), SeedStream::kTargetSample, replay));

    std::vector<TargetSpec> sample;
    for (std::vector<TargetSpec>& pool : by_degree) {
      const auto want = std::min(pool.size(), static_cast<std::size_t>(options.samples_per_degree));
      // partial Fisher–Yates over an index permutation
      std::vector<std::size_t> index(pool.size());
      std::iota(index.begin(), index.end(), std::size_t{0});
      for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(pick.below(pool.size() - i));
        std::swap(index[i], index[j]);
        sample.push_back(pool[index[i]]);
      }
    }
    const TargetBuilder builder(surrogate, washout, options.d_max);
    std::vector<double> caps;
    if (options.anchored_surrogates) {
      if (!anchor) anchor.emplace(inputs, washout, options.d_max);
      std::vector<std::size_t> keep(sample.size());
      for (std::size_t i = 0; i < sample.size(); ++i) {
        keep[i] = static_cast<std::size_t>(pick.below(sample[i].size()));
      }
      caps = anchored_capacities(projector, *anchor, builder, sample, keep, options.batch);
    } else {
      caps = evaluate_capacities(projector, builder, sample, options.batch);
    }
    for (double c : caps) largest = std::max(largest, c);
  }
  return options.threshold_factor * largest;
}

double estimate_threshold(const DesignMatrix& design, const InputSequence& inputs,
                          std::size_t washout, int n_surrogates) {
  IpcOptions options;
  options.surrogates = n_surrogates;
  return estimate_threshold(ReadoutProjector(design.values), inputs, washout, options);
}

// ---------------------------------------------------------------------------
// Profile

CapacityReport ipc_profile(const DesignMatrix& design, const InputSequence& inputs,
                           std::size_t washout, const IpcOptions& options) {
  options.validate();
  if (washout >= inputs.size() ||
      static_cast<std::size_t>(design.rows()) != inputs.size() - washout) {
    throw ValidationError("ipc_profile: design rows must equal input length minus washout");
  }
  const ReadoutProjector projector(design.values);
  const TargetBuilder builder(inputs, washout, options.d_max);

  CapacityReport report;
  report.n_vars = design.n_vars();
  report.threshold = estimate_threshold(projector, inputs, washout, options);
  report.metadata.input_seed = inputs.seed();
  report.metadata.washout = washout;
  report.metadata.length = inputs.size() - washout;

  const int washout_delay = static_cast<int>(std::min<std::size_t>(washout, 1u << 30));
  auto evaluate_into = [&](std::vector<TargetSpec> specs, std::vector<CapacityRecord>& sink) {
    const std::vector<double> caps = evaluate_capacities(projector, builder, specs, options.batch);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      sink.push_back({std::move(specs[i]), caps[i], caps[i] > report.threshold});
    }
  };

  for (int d = 1; d <= options.d_max; ++d) {
    const WindowPolicy::Window w = options.windows.window(d);
    int max_delay = std::min(w.max_delay, washout_delay);
    std::vector<CapacityRecord> records;
    if (max_delay >= w.min_delay) {
      evaluate_into(enumerate_degree(d, w.min_delay, max_delay, w.max_terms), records);
    }

    if (d == 1 && options.windows.degree1_extend) {
      const int block = options.windows.degree1_block;
      auto tail_active = [&](int lo, int hi) {
        return std::any_of(records.begin(), records.end(), [&](const CapacityRecord& r) {
          return r.above_threshold && r.spec.max_delay() >= lo && r.spec.max_delay() <= hi;
        });
      };
      while (max_delay < washout_delay && tail_active(max_delay - block + 1, max_delay)) {
        const int hi = std::min(max_delay + block, washout_delay);
        std::vector<TargetSpec> extra;
        for (int delay = max_delay + 1; delay <= hi; ++delay) {
          extra.emplace_back(std::vector<TargetTerm>{{delay, 1}});
        }
        evaluate_into(std::move(extra), records);
        max_delay = hi;
      }
    }
    if (d == 1) report.degree1_max_delay = max_delay;

    double sum = 0.0;
    bool edge_active = false;
    for (const CapacityRecord& r : records) {
      if (!r.above_threshold) continue;
      sum += r.capacity;
      if (r.spec.max_delay() == max_delay) edge_active = true;
    }
    report.per_degree_totals[d] = sum;
    report.total += sum;
    if (edge_active) report.truncated_degrees.push_back(d);
    report.records.insert(report.records.end(), std::make_move_iterator(records.begin()),
                          std::make_move_iterator(records.end()));
  }
  report.normalized_total =
      report.n_vars > 0 ? report.total / static_cast<double>(report.n_vars) : 0.0;
  return report;
}

// ---------------------------------------------------------------------------
// Aggregation

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw ValidationError("mean_std: no values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

RealizationSummary aggregate_realizations(std::span<const CapacityReport> reports) {
  if (reports.empty()) throw ValidationError("aggregate_realizations: no reports");
  RealizationSummary summary;
  summary.count = reports.size();
  summary.n_vars = reports.front().n_vars;
  for (const CapacityReport& r : reports) {
    if (r.n_vars != summary.n_vars) {
      throw ValidationError("aggregate_realizations: reports disagree on n_vars");
    }
  }
  std::map<int, std::vector<double>> by_degree;
  for (const CapacityReport& r : reports) {
    for (const auto& [degree, value] : r.per_degree_totals) by_degree[degree];
  }
  std::vector<double> totals;
  std::vector<double> normalized;
  for (const CapacityReport& r : reports) {
    for (auto& [degree, values] : by_degree) {
      const auto it = r.per_degree_totals.find(degree);
      values.push_back(it == r.per_degree_totals.end() ? 0.0 : it->second);
    }
    totals.push_back(r.total);
    normalized.push_back(r.normalized_total);
  }
  for (const auto& [degree, values] : by_degree) summary.per_degree[degree] = mean_std(values);
  summary.total = mean_std(totals);
  summary.normalized_total = mean_std(normalized);
  return summary;
}

}  // namespace qrc
