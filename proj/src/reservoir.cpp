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

#include "qrc/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrc/random.hpp"

namespace qrc {

char axis_symbol(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

Axis axis_from_symbol(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::X;
    case 'y': case 'Y': return Axis::Y;
    case 'z': case 'Z': return Axis::Z;
    default: break;
  }
  throw ValidationError(std::string("unknown axis '") + c + "' (expected x, y or z)");
}

Pauli to_pauli(Axis a) {
  switch (a) {
    case Axis::X: return Pauli::X;
    case Axis::Y: return Pauli::Y;
    case Axis::Z: return Pauli::Z;
  }
  return Pauli::I;
}

// ---------------------------------------------------------------------------
// ObservableSet

ObservableSet::ObservableSet(std::vector<Axis> singles, std::vector<AxisPair> pairs)
    : singles_(std::move(singles)), pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < singles_.size(); ++i) {
    if (std::find(singles_.begin(), singles_.begin() + static_cast<std::ptrdiff_t>(i),
                  singles_[i]) != singles_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ValidationError("ObservableSet: duplicate single axis");
    }
  }
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (std::find(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(i), pairs_[i]) !=
        pairs_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ValidationError("ObservableSet: duplicate axis pair");
    }
  }
  if (singles_.empty() && pairs_.empty()) {
    throw ValidationError("ObservableSet: at least one observable is required");
  }
}

ObservableSet ObservableSet::parse(std::string_view text) {
  std::vector<Axis> singles;
  std::vector<AxisPair> pairs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t plus = std::min(text.find('+', pos), text.size());
    const std::string_view token = text.substr(pos, plus - pos);
    if (token.size() == 1) {
      singles.push_back(axis_from_symbol(token[0]));
    } else if (token.size() == 2) {
      pairs.push_back({axis_from_symbol(token[0]), axis_from_symbol(token[1])});
    } else {
      throw ValidationError("observable set '" + std::string(text) + "': bad token '" +
                            std::string(token) + "'");
    }
    pos = plus + 1;
  }
  return ObservableSet(std::move(singles), std::move(pairs));
}

std::size_t ObservableSet::count(int n_qubits) const {
  const auto n = static_cast<std::size_t>(n_qubits);
  return n * singles_.size() + n * (n - 1) * pairs_.size();
}

std::vector<Observable> ObservableSet::expand(int n_qubits) const {
  std::vector<Observable> out;
  out.reserve(count(n_qubits));
  for (Axis a : singles_) {
    for (int q = 0; q < n_qubits; ++q) {
      out.push_back({PauliString::single(n_qubits, q, to_pauli(a)),
                     std::string(1, axis_symbol(a)) + "_" + std::to_string(q + 1)});
    }
  }
  for (const AxisPair& p : pairs_) {
    for (int i = 0; i < n_qubits; ++i) {
      for (int j = 0; j < n_qubits; ++j) {
        if (i == j) continue;
        std::string label{axis_symbol(p.first), axis_symbol(p.second)};
        label += "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        out.push_back(
            {PauliString::pair(n_qubits, i, to_pauli(p.first), j, to_pauli(p.second)), label});
      }
    }
  }
  return out;
}

std::string ObservableSet::to_string() const {
  std::string out;
  auto append = [&out](std::string token) {
    if (!out.empty()) out += '+';
    out += token;
  };
  for (Axis a : singles_) append(std::string(1, axis_symbol(a)));
  for (const AxisPair& p : pairs_) append(std::string{axis_symbol(p.first), axis_symbol(p.second)});
  return out;
}

// ---------------------------------------------------------------------------
// Config and couplings

void ReservoirConfig::validate() const {
  if (n_qubits < 1) throw ValidationError("n_qubits must be >= 1");
  if (n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits = " + std::to_string(n_qubits) + " exceeds limit of " +
                        std::to_string(kMaxQubits));
  }
  if (!std::isfinite(field_h)) throw ValidationError("field_h must be finite");
  if (!(coupling_scale >= 0.0) || !std::isfinite(coupling_scale)) {
    throw ValidationError("coupling_scale must be finite and >= 0");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and > 0");
  if (virtual_nodes < 1) throw ValidationError("virtual_nodes must be >= 1");
  if (observables.count(n_qubits) < 1) {
    throw ValidationError("observables: set yields no variables for n_qubits = " +
                          std::to_string(n_qubits));
  }
}

CouplingMatrix::CouplingMatrix(int n_qubits, std::vector<double> lower)
    : n_qubits_(n_qubits), lower_(std::move(lower)) {
  const auto n = static_cast<std::size_t>(n_qubits);
  if (n_qubits < 1 || lower_.size() != n * (n - 1) / 2) {
    throw ValidationError("CouplingMatrix: expected N(N-1)/2 entries");
  }
}

CouplingMatrix CouplingMatrix::draw(int n_qubits, double scale, std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(n_qubits);
  std::vector<double> lower(n * (n - 1) / 2);
  for (double& j : lower) j = rng.uniform(-0.5 * scale, 0.5 * scale);
  return CouplingMatrix(n_qubits, std::move(lower));
}

double CouplingMatrix::operator()(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_qubits_ || j >= n_qubits_) {
    throw ValidationError("CouplingMatrix: invalid pair (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
  }
  if (i < j) std::swap(i, j);
  const auto row = static_cast<std::size_t>(i);
  return lower_[row * (row - 1) / 2 + static_cast<std::size_t>(j)];
}

ComplexMatrix<> ising_hamiltonian(const CouplingMatrix& couplings, double field_h) {
  const int n = couplings.n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix<> h = ComplexMatrix<>::Zero(dim, dim);
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      h += couplings(i, j) * pauli_matrix(PauliString::pair(n, i, Pauli::X, j, Pauli::X));
    }
  }
  for (int i = 0; i < n; ++i) {
    h += field_h * pauli_matrix(PauliString::single(n, i, Pauli::Z));
  }
  return h;
}

IsingHamiltonian build_hamiltonian(const ReservoirConfig& config) {
  config.validate();
  CouplingMatrix couplings =
      CouplingMatrix::draw(config.n_qubits, config.coupling_scale, config.coupling_seed);
  ComplexMatrix<> h = ising_hamiltonian(couplings, config.field_h);
  return {std::move(h), std::move(couplings)};
}

// ---------------------------------------------------------------------------
// Injection

DensityMatrix<> input_state(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream msg;
    msg << "input_state: s = " << s << " is outside [0, 1]";
    throw ValidationError(msg.str());
  }
  const double off = std::sqrt(s * (1.0 - s));
  ComplexMatrix<> m(2, 2);
  m << 1.0 - s, off, off, s;
  return DensityMatrix<>::trusted(std::move(m));
}

DensityMatrix<> inject(const DensityMatrix<>& rho, double s) {
  DensityMatrix<> fresh = input_state(s);
  if (rho.n_qubits() == 1) return fresh;
  return DensityMatrix<>::trusted(kron(fresh.matrix(), partial_trace_first(rho).matrix()));
}

DensityMatrix<> step(const DensityMatrix<>& rho, double s, const Propagator<>& u) {
  if (u.dimension() != rho.dimension()) {
    throw ValidationError("step: propagator dimension " + std::to_string(u.dimension()) +
                          " does not match state dimension " + std::to_string(rho.dimension()));
  }
  return DensityMatrix<>::trusted(u.conjugate(inject(rho, s).matrix()));
}

// ---------------------------------------------------------------------------
// Inputs

InputSequence::InputSequence(std::vector<double> values, std::uint64_t seed)
    : values_(std::move(values)), seed_(seed) {
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!(values_[k] >= 0.0 && values_[k] <= 1.0)) {
      throw ValidationError("InputSequence: value at index " + std::to_string(k) +
                            " is outside [0, 1]");
    }
  }
}

InputSequence InputSequence::generate(std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> values(length);
  for (double& v : values) v = rng.uniform();
  return InputSequence(std::move(values), seed);
}

// ---------------------------------------------------------------------------
// Reservoir

namespace {

void flatten_into(const ComplexMatrix<>& m, Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n = m.size();
  const Eigen::Map<const Eigen::VectorXcd> v(m.data(), n);
  out.head(n) = v.real();
  out.tail(n) = v.imag();
}

}  // namespace

Reservoir::Reservoir(ReservoirConfig config)
    : config_(std::move(config)), hamiltonian_(build_hamiltonian(config_)) {
  spectrum_ = hermitian_eig(hamiltonian_.matrix);
  const int v_count = config_.virtual_nodes;
  snapshots_.reserve(static_cast<std::size_t>(v_count));
  for (int v = 1; v <= v_count; ++v) {
    const double tau = v == v_count ? config_.dt : config_.dt * v / v_count;
    snapshots_.push_back(propagator(spectrum_, tau));
  }
  observables_ = config_.observables.expand(config_.n_qubits);

  const Eigen::Index dim = hamiltonian_.matrix.rows();
  const auto n_obs = static_cast<Eigen::Index>(observables_.size());
  heisenberg_.resize(n_obs * v_count, 2 * dim * dim);
  std::vector<ComplexMatrix<>> paulis;
  paulis.reserve(observables_.size());
  for (const Observable& o : observables_) paulis.push_back(pauli_matrix(o.pauli));
  Eigen::VectorXd row(2 * dim * dim);
  for (int v = 0; v < v_count; ++v) {
    const ComplexMatrix<>& u = snapshots_[static_cast<std::size_t>(v)].matrix();
    for (Eigen::Index j = 0; j < n_obs; ++j) {
      const ComplexMatrix<> a = u.adjoint() * paulis[static_cast<std::size_t>(j)] * u;
      flatten_into(a, row);
      heisenberg_.row(v * n_obs + j) = row.transpose();
    }
  }
}

const Propagator<>& Reservoir::snapshot_propagator(int v) const {
  if (v < 1 || v > config_.virtual_nodes) {
    throw ValidationError("snapshot_propagator: v must lie in [1, V]");
  }
  return snapshots_[static_cast<std::size_t>(v - 1)];
}

std::vector<std::string> Reservoir::column_labels() const {
  std::vector<std::string> labels;
  labels.reserve(config_.n_vars() + 1);
  for (int v = 1; v <= config_.virtual_nodes; ++v) {
    for (const Observable& o : observables_) labels.push_back(o.label + "_v" + std::to_string(v));
  }
  labels.emplace_back("bias");
  return labels;
}

DensityMatrix<> Reservoir::step(const DensityMatrix<>& rho, double s) const {
  return qrc::step(rho, s, step_propagator());
}

Eigen::VectorXd Reservoir::snapshot(const DensityMatrix<>& injected) const {
  if (injected.dimension() != hamiltonian_.matrix.rows()) {
    throw ValidationError("snapshot: state dimension does not match the reservoir");
  }
  Eigen::VectorXd flat(2 * injected.matrix().size());
  flatten_into(injected.matrix(), flat);
  return heisenberg_ * flat;
}

DesignMatrix Reservoir::run(const InputSequence& inputs, std::size_t washout,
                            const RunOptions& options) const {
  if (washout >= inputs.size()) {
    throw ValidationError("run: washout (" + std::to_string(washout) +
                          ") must be smaller than the input length (" +
                          std::to_string(inputs.size()) + ")");
  }
  DensityMatrix<> rho = options.initial_state.value_or(
      DensityMatrix<>::maximally_mixed(config_.n_qubits));
  if (rho.n_qubits() != config_.n_qubits) {
    throw ValidationError("run: initial state has the wrong number of qubits");
  }

  const auto rows = static_cast<Eigen::Index>(inputs.size() - washout);
  const Eigen::Index n_vars = heisenberg_.rows();
  DesignMatrix out;
  out.values.resize(rows, n_vars + 1);
  out.values.col(n_vars).setOnes();
  out.labels = column_labels();

  // Post-injection states are buffered and read out in blocks as one GEMM.
  constexpr Eigen::Index kBlock = 256;
  const Eigen::Index flat_size = heisenberg_.cols();
  Eigen::MatrixXd states(flat_size, std::min(kBlock, rows));
  Eigen::Index buffered = 0;
  Eigen::Index row = 0;
  auto flush = [&] {
    if (buffered == 0) return;
    out.values.block(row, 0, buffered, n_vars).noalias() =
        (heisenberg_ * states.leftCols(buffered)).transpose();
    row += buffered;
    buffered = 0;
  };

  const ComplexMatrix<>& u = step_propagator().matrix();
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    DensityMatrix<> injected = inject(rho, inputs[k]);
    if (k >= washout) {
      flatten_into(injected.matrix(), states.col(buffered));
      if (++buffered == states.cols()) flush();
    }
    rho = DensityMatrix<>::trusted(u * injected.matrix() * u.adjoint());
    if (options.check_invariants) rho.check_invariants();
  }
  flush();
  return out;
}

std::vector<ConvergencePoint> Reservoir::convergence_trace(const DensityMatrix<>& rho_a,
                                                           const DensityMatrix<>& rho_b,
                                                           const InputSequence& inputs) const {
  if (rho_a.dimension() != rho_b.dimension() ||
      rho_a.dimension() != hamiltonian_.matrix.rows()) {
    throw ValidationError("convergence_trace: state dimensions do not match the reservoir");
  }
  std::vector<ConvergencePoint> trace;
  trace.reserve(inputs.size());
  DensityMatrix<> a = rho_a;
  DensityMatrix<> b = rho_b;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    a = step(a, inputs[k]);
    b = step(b, inputs[k]);
    trace.push_back({k + 1, static_cast<double>(k + 1) * config_.dt, frobenius_distance(a, b)});
  }
  return trace;
}

DesignMatrix run(const ReservoirConfig& config, const InputSequence& inputs, std::size_t washout,
                 const RunOptions& options) {
  return Reservoir(config).run(inputs, washout, options);
}

std::vector<ConvergencePoint> convergence_trace(const ReservoirConfig& config,
                                                const DensityMatrix<>& rho_a,
                                                const DensityMatrix<>& rho_b,
                                                const InputSequence& inputs) {
  return Reservoir(config).convergence_trace(rho_a, rho_b, inputs);
}

DensityMatrix<> all_zeros_state(int n_qubits) { return DensityMatrix<>::basis_state(n_qubits, 0); }

DensityMatrix<> all_ones_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ValidationError("all_ones_state: n_qubits out of range");
  }
  return DensityMatrix<>::basis_state(n_qubits, (std::uint64_t{1} << n_qubits) - 1);
}

}  // namespace qrc
