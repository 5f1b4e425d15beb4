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

// Information processing capacity.
//
// A target is a product of Legendre polynomials of delayed scaled inputs,
// y_k = Π_i P_{d_i}(s̃_{k − delay_i}); its capacity is the fraction of the
// target's mean square reproduced by the best linear readout of the design
// matrix, C = 1 − min_w MSE / ⟨y²⟩. Summing the capacities of all targets of
// total degree d gives the degree-d share of the profile.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qrc/reservoir.hpp"

namespace qrc {

struct TargetTerm {
  int delay;
  int degree;
  friend auto operator<=>(const TargetTerm&, const TargetTerm&) = default;
};

/// Product of Legendre factors on strictly increasing delays.
class TargetSpec {
 public:
  TargetSpec() = default;
  explicit TargetSpec(std::vector<TargetTerm> terms);

  const std::vector<TargetTerm>& terms() const noexcept { return terms_; }
  int total_degree() const noexcept { return total_degree_; }
  int max_delay() const noexcept { return terms_.empty() ? 0 : terms_.back().delay; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// "0:1,2:2" (delay:degree pairs).
  std::string to_string() const;
  std::string delay_list() const;   // "0;2"
  std::string degree_list() const;  // "1;2"

  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;

 private:
  std::vector<TargetTerm> terms_;
  int total_degree_ = 0;
};

/// Per-degree delay windows for enumeration.
struct WindowPolicy {
  struct Window {
    int min_delay;
    int max_delay;
    int max_terms;
  };

  int delay_origin = 0;
  int degree1_max_delay = 150;
  int degree1_block = 25;
  bool degree1_extend = true;
  int degree2_max_delay = 30;
  int degree3_4_max_delay = 15;
  int high_degree_max_delay = 8;
  int high_degree_max_terms = 4;

  Window window(int degree) const;
  void validate() const;

  /// Same delay range for every degree, no term cap, no extension.
  static WindowPolicy uniform(int max_delay, int delay_origin = 0);
};

/// Every target of total degree `degree` on delays [min_delay, max_delay]
/// with at most `max_terms` factors, ordered lexicographically by delays,
/// then by degrees.
std::vector<TargetSpec> enumerate_degree(int degree, int min_delay, int max_delay, int max_terms);

/// Degree-major concatenation of enumerate_degree over 1..d_max.
std::vector<TargetSpec> enumerate_targets(int d_max, const WindowPolicy& policy);

/// y_k for the L = inputs.size() − washout evaluation steps.
Eigen::VectorXd target_series(const InputSequence& inputs, const TargetSpec& spec,
                              std::size_t washout);

/// Cached Legendre table P_d(s̃_k) for fast target construction.
class TargetBuilder {
 public:
  TargetBuilder(const InputSequence& inputs, std::size_t washout, int max_degree);

  Eigen::Index length() const noexcept { return length_; }
  int max_degree() const noexcept { return static_cast<int>(table_.rows()) - 1; }

  void fill(const TargetSpec& spec, Eigen::Ref<Eigen::VectorXd> out) const;
  Eigen::VectorXd series(const TargetSpec& spec) const;

 private:
  std::size_t washout_;
  Eigen::Index length_;
  // (max_degree + 1) × inputs; each degree's row is contiguous
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> table_;
};

/// Orthonormal basis of the column space of a design matrix, from a thin SVD
/// with relative singular-value cutoff 1e-10. Shared read-only across targets.
class ReadoutProjector {
 public:
  static constexpr double kRelativeCutoff = 1e-10;

  explicit ReadoutProjector(const Eigen::MatrixXd& design);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index rank() const noexcept { return basis_.cols(); }
  const Eigen::VectorXd& singular_values() const noexcept { return singular_values_; }

  /// 1 − min MSE / ⟨y²⟩, clipped to [0, 1]. Throws DomainError if ⟨y²⟩ = 0.
  double capacity(const Eigen::Ref<const Eigen::VectorXd>& target) const;

  /// Column-wise capacities.
  Eigen::VectorXd capacities(const Eigen::Ref<const Eigen::MatrixXd>& targets) const;

 private:
  Eigen::Index rows_;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd singular_values_;
};

double capacity(const DesignMatrix& design, const Eigen::VectorXd& target);

struct IpcOptions {
  int d_max = 9;
  WindowPolicy windows;
  int surrogates = 10;
  double threshold_factor = 1.5;
  int samples_per_degree = 200;  // surrogate targets per degree and replay
  Eigen::Index batch = 64;       // targets evaluated per GEMM
  bool anchored_surrogates = true;  // see estimate_threshold

  void validate() const;
};

/// Noise floor: `threshold_factor` × the largest capacity the design matrix
/// reaches for targets built on independently drawn input sequences. With
/// `anchored_surrogates`, one factor of every multi-factor sampled target is
/// kept on the true inputs, which preserves the chance fluctuations of
/// targets that share a factor with the readout while their true capacity
/// stays zero. The surrogate sequences and the stratified target sample are
/// seeded from inputs.seed() and the replay index, so adding replays never
/// lowers it.
double estimate_threshold(const ReadoutProjector& projector, const InputSequence& inputs,
                          std::size_t washout, const IpcOptions& options);

double estimate_threshold(const DesignMatrix& design, const InputSequence& inputs,
                          std::size_t washout, int n_surrogates);

/// Capacities of many targets against one projector, in input order.
std::vector<double> evaluate_capacities(const ReadoutProjector& projector,
                                        const TargetBuilder& builder,
                                        std::span<const TargetSpec> specs, Eigen::Index batch = 64);

struct CapacityRecord {
  TargetSpec spec;
  double capacity = 0.0;
  bool above_threshold = false;
};

struct ReportMetadata {
  ReservoirConfig config;
  std::uint64_t input_seed = 0;
  std::size_t washout = 0;
  std::size_t length = 0;  // evaluation steps L
  int realization = 0;
};

struct CapacityReport {
  std::vector<CapacityRecord> records;  // every evaluated target
  double threshold = 0.0;
  std::map<int, double> per_degree_totals;  // above-threshold sums, degrees 1..d_max
  double total = 0.0;
  std::size_t n_vars = 0;
  double normalized_total = 0.0;
  int degree1_max_delay = 0;              // after adaptive extension
  std::vector<int> truncated_degrees;     // window edge still above threshold
  ReportMetadata metadata;

  /// total ≤ n_vars · (1 + margin)
  bool within_bound(double margin = 0.02) const {
    return total <= static_cast<double>(n_vars) * (1.0 + margin);
  }
};

CapacityReport ipc_profile(const DesignMatrix& design, const InputSequence& inputs,
                           std::size_t washout, const IpcOptions& options = {});

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

struct RealizationSummary {
  std::size_t count = 0;
  std::size_t n_vars = 0;
  std::map<int, MeanStd> per_degree;
  MeanStd total;
  MeanStd normalized_total;
};

RealizationSummary aggregate_realizations(std::span<const CapacityReport> reports);

}  // namespace qrc
