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

// Driven transverse-field Ising reservoir.
//
// Each input s_k ∈ [0, 1] overwrites qubit 0 with the pure state
// √(1−s)|0⟩ + √s|1⟩ (the rest of the register keeps its marginal), after
// which the register evolves under H = Σ_{i>j} J_ij XᵢXⱼ + h Σᵢ Zᵢ for Δt.
// Observables are sampled at V equally spaced times vΔt/V after injection.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/linalg.hpp"

namespace qrc {

enum class Axis : std::uint8_t { X, Y, Z };

char axis_symbol(Axis a);
Axis axis_from_symbol(char c);
Pauli to_pauli(Axis a);

struct AxisPair {
  Axis first;
  Axis second;
  friend bool operator==(const AxisPair&, const AxisPair&) = default;
};

/// One readout variable before multiplexing.
struct Observable {
  PauliString pauli;
  std::string label;  // "z_3" or "xy_1_2", qubits numbered from 1
};

/// Which expectation values are read out: single-qubit projections on every
/// qubit, and two-qubit correlations on every ordered pair i ≠ j.
class ObservableSet {
 public:
  ObservableSet() = default;
  ObservableSet(std::vector<Axis> singles, std::vector<AxisPair> pairs);

  /// Grammar: tokens joined by '+'; one letter is a single axis, two letters
  /// an ordered axis pair. "z", "x+y", "xy+z".
  static ObservableSet parse(std::string_view text);

  const std::vector<Axis>& singles() const noexcept { return singles_; }
  const std::vector<AxisPair>& pairs() const noexcept { return pairs_; }

  /// N·|singles| + N(N−1)·|pairs|
  std::size_t count(int n_qubits) const;
  std::vector<Observable> expand(int n_qubits) const;
  std::string to_string() const;

  friend bool operator==(const ObservableSet&, const ObservableSet&) = default;

 private:
  std::vector<Axis> singles_;
  std::vector<AxisPair> pairs_;
};

struct ReservoirConfig {
  int n_qubits = 5;
  double field_h = 1.0;
  double coupling_scale = 1.0;
  double dt = 10.0;
  int virtual_nodes = 1;
  std::uint64_t coupling_seed = 0;
  ObservableSet observables = ObservableSet::parse("z");

  /// Throws ValidationError (or CapacityError for N > 12) naming the field.
  void validate() const;

  /// Observable columns of the design matrix, bias excluded.
  std::size_t n_vars() const {
    return observables.count(n_qubits) * static_cast<std::size_t>(virtual_nodes);
  }
};

/// J_ij for i > j, drawn uniformly from [−Jₛ/2, Jₛ/2].
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  CouplingMatrix(int n_qubits, std::vector<double> lower);

  /// Draw order: i = 1..N−1, j = 0..i−1.
  static CouplingMatrix draw(int n_qubits, double scale, std::uint64_t seed);

  int n_qubits() const noexcept { return n_qubits_; }
  /// Symmetric access, i ≠ j.
  double operator()(int i, int j) const;
  const std::vector<double>& entries() const noexcept { return lower_; }

 private:
  int n_qubits_ = 0;
  std::vector<double> lower_;
};

struct IsingHamiltonian {
  ComplexMatrix<> matrix;
  CouplingMatrix couplings;
};

ComplexMatrix<> ising_hamiltonian(const CouplingMatrix& couplings, double field_h);
IsingHamiltonian build_hamiltonian(const ReservoirConfig& config);

/// Pure input state of qubit 0 encoding s ∈ [0, 1].
DensityMatrix<> input_state(double s);

/// input_state(s) ⊗ Tr₁ ρ; for a single qubit simply input_state(s).
DensityMatrix<> inject(const DensityMatrix<>& rho, double s);

/// U · inject(ρ, s) · U†
DensityMatrix<> step(const DensityMatrix<>& rho, double s, const Propagator<>& u);

class InputSequence {
 public:
  InputSequence() = default;
  explicit InputSequence(std::vector<double> values, std::uint64_t seed = 0);

  /// i.i.d. uniform on [0, 1].
  static InputSequence generate(std::size_t length, std::uint64_t seed);

  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  /// s̃_k = 2 s_k − 1 ∈ [−1, 1]
  double scaled(std::size_t k) const { return 2.0 * values_[k] - 1.0; }

 private:
  std::vector<double> values_;
  std::uint64_t seed_ = 0;
};

/// L × (n_vars + 1) readout matrix; the last column is the bias (all ones).
struct DesignMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;

  Eigen::Index rows() const noexcept { return values.rows(); }
  std::size_t n_vars() const noexcept {
    return values.cols() > 0 ? static_cast<std::size_t>(values.cols() - 1) : 0;
  }
  auto observables() const { return values.leftCols(values.cols() - 1); }
};

struct RunOptions {
  std::optional<DensityMatrix<>> initial_state;  // default I/2^N
  bool check_invariants = false;                 // validate every state (slow)
};

struct ConvergencePoint {
  std::size_t inputs;  // inputs injected so far
  double time;         // inputs · Δt
  double distance;     // Frobenius distance between the two trajectories
};

/// A built reservoir: Hamiltonian, its spectrum, and the snapshot propagators.
class Reservoir {
 public:
  explicit Reservoir(ReservoirConfig config);

  const ReservoirConfig& config() const noexcept { return config_; }
  const IsingHamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
  const HermitianEigen<>& spectrum() const noexcept { return spectrum_; }

  /// exp(−iHΔt)
  const Propagator<>& step_propagator() const { return snapshots_.back(); }
  /// exp(−iH vΔt/V), v ∈ [1, V]
  const Propagator<>& snapshot_propagator(int v) const;

  const std::vector<Observable>& observables() const noexcept { return observables_; }
  std::vector<std::string> column_labels() const;

  DensityMatrix<> step(const DensityMatrix<>& rho, double s) const;

  /// All V·|observables| readouts of a post-injection state, v-major.
  Eigen::VectorXd snapshot(const DensityMatrix<>& injected) const;

  /// Design matrix over the inputs after `washout`.
  DesignMatrix run(const InputSequence& inputs, std::size_t washout,
                   const RunOptions& options = {}) const;

  std::vector<ConvergencePoint> convergence_trace(const DensityMatrix<>& rho_a,
                                                  const DensityMatrix<>& rho_b,
                                                  const InputSequence& inputs) const;

 private:
  ReservoirConfig config_;
  IsingHamiltonian hamiltonian_;
  HermitianEigen<> spectrum_;
  std::vector<Propagator<>> snapshots_;
  std::vector<Observable> observables_;
  // Row r holds [vec Re A_r, vec Im A_r] for the Heisenberg-picture
  // observable A_r = U_v† B U_v, so readouts are one real GEMV per state.
  Eigen::MatrixXd heisenberg_;
};

DesignMatrix run(const ReservoirConfig& config, const InputSequence& inputs, std::size_t washout,
                 const RunOptions& options = {});

std::vector<ConvergencePoint> convergence_trace(const ReservoirConfig& config,
                                                const DensityMatrix<>& rho_a,
                                                const DensityMatrix<>& rho_b,
                                                const InputSequence& inputs);

/// |0…0⟩⟨0…0| and |1…1⟩⟨1…1|.
DensityMatrix<> all_zeros_state(int n_qubits);
DensityMatrix<> all_ones_state(int n_qubits);

}  // namespace qrc
