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

// Dense complex kernel for small qubit registers.
//
// Tensor-factor ordering: qubit 0 (the input qubit) is the leftmost, most
// significant Kronecker factor. Basis index bit (N-1-q) therefore belongs to
// qubit q, and tracing out qubit 0 folds the top half of the matrix onto the
// bottom half.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrc/errors.hpp"

namespace qrc {

inline constexpr int kMaxQubits = 12;
inline constexpr Eigen::Index kMaxDimension = Eigen::Index{1} << kMaxQubits;

template <typename T = double>
using ComplexMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T = double>
using ComplexVector = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;
template <typename T = double>
using RealVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return (u * u.adjoint() - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, std::string_view what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw ValidationError(std::string(what) + ": empty matrix");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

/// Kronecker product a ⊗ b; `a` is the most significant factor.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  using Result = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw CapacityError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the " + std::to_string(kMaxQubits) + "-qubit limit");
  }
  Result out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Scalar(a(i, j)) * b.template cast<Scalar>();
    }
  }
  return out;
}

template <typename T = double>
struct HermitianEigen {
  RealVector<T> values;      // ascending
  ComplexMatrix<T> vectors;  // columns are eigenvectors
};

/// H = V diag(λ) V† with λ ascending. Rejects inputs more than 1e-10 away
/// from Hermitian.
template <typename Derived>
HermitianEigen<typename Derived::RealScalar> hermitian_eig(const Eigen::MatrixBase<Derived>& h) {
  using T = typename Derived::RealScalar;
  require_finite(h, "hermitian_eig");
  if (h.rows() != h.cols()) {
    throw ValidationError("hermitian_eig: matrix is not square");
  }
  const T defect = hermitian_defect(h);
  if (defect > T(1e-10)) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (max |H - H^dag| = " << defect << ")";
    throw ValidationError(msg.str());
  }
  const ComplexMatrix<T> hc = h.template cast<std::complex<T>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<T>> solver(hc);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "hermitian_eig: eigensolver did not converge (dim " << hc.rows()
        << ", Frobenius norm " << hc.norm() << ", max |entry| " << hc.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Unitary exp(-i H τ) for a fixed interval τ.
template <typename T = double>
class Propagator {
 public:
  Propagator(ComplexMatrix<T> u, T interval) : u_(std::move(u)), interval_(interval) {
    if (u_.rows() != u_.cols()) {
      throw ValidationError("Propagator: matrix is not square");
    }
    const T defect = unitarity_defect(u_);
    if (!(defect <= T(1e-9))) {
      std::ostringstream msg;
      msg << "Propagator: matrix is not unitary (max |U U^dag - I| = " << defect << ")";
      throw NumericalError(msg.str());
    }
  }

  const ComplexMatrix<T>& matrix() const noexcept { return u_; }
  T interval() const noexcept { return interval_; }
  Eigen::Index dimension() const noexcept { return u_.rows(); }

  /// U ρ U†
  template <typename Derived>
  ComplexMatrix<T> conjugate(const Eigen::MatrixBase<Derived>& rho) const {
    return u_ * rho * u_.adjoint();
  }

 private:
  ComplexMatrix<T> u_;
  T interval_;
};

template <typename T>
Propagator<T> propagator(const HermitianEigen<T>& eig, T tau) {
  const ComplexVector<T> phases = (eig.values.template cast<std::complex<T>>() *
                                   std::complex<T>(T(0), -tau))
                                      .array()
                                      .exp()
                                      .matrix();
  ComplexMatrix<T> u = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
  return Propagator<T>(std::move(u), tau);
}

template <typename Derived>
Propagator<typename Derived::RealScalar> propagator(const Eigen::MatrixBase<Derived>& h,
                                                    typename Derived::RealScalar tau) {
  return propagator(hermitian_eig(h), tau);
}

namespace detail {

inline int qubits_for_dimension(Eigen::Index dim, std::string_view what) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw ValidationError(std::string(what) + ": dimension " + std::to_string(dim) +
                          " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if (n > kMaxQubits) {
    throw CapacityError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds limit of " +
                        std::to_string(kMaxQubits));
  }
  return n;
}

}  // namespace detail

/// Hermitian, positive semidefinite, unit-trace state on N qubits.
template <typename T = double>
class DensityMatrix {
 public:
  using Matrix = ComplexMatrix<T>;

  static constexpr T kHermitianTolerance = T(1e-10);
  static constexpr T kTraceTolerance = T(1e-10);
  static constexpr T kPsdTolerance = T(1e-9);

  /// Validating constructor.
  explicit DensityMatrix(Matrix m) : DensityMatrix(std::move(m), Unchecked{}) {
    require_finite(m_, "DensityMatrix");
    if (const std::string problem = invariant_violation(); !problem.empty()) {
      throw ValidationError("DensityMatrix: " + problem);
    }
  }

  /// Shape-checked only; for states produced by trace-preserving maps.
  static DensityMatrix trusted(Matrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

  static DensityMatrix maximally_mixed(int n_qubits) {
    const Eigen::Index dim = dimension_for(n_qubits);
    return trusted(Matrix::Identity(dim, dim) / T(dim));
  }

  static DensityMatrix basis_state(int n_qubits, std::uint64_t index) {
    const Eigen::Index dim = dimension_for(n_qubits);
    if (index >= static_cast<std::uint64_t>(dim)) {
      throw ValidationError("DensityMatrix::basis_state: index out of range");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = T(1);
    return trusted(std::move(m));
  }

  /// |ψ⟩⟨ψ| for a normalized state vector.
  static DensityMatrix pure(const ComplexVector<T>& psi) {
    const T norm = psi.norm();
    if (std::abs(norm - T(1)) > T(1e-10)) {
      throw ValidationError("DensityMatrix::pure: state vector is not normalized");
    }
    return DensityMatrix(psi * psi.adjoint());
  }

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dimension() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

  T purity() const { return (m_ * m_).trace().real(); }

  T min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }

  /// Empty when every invariant holds, otherwise a description of the first failure.
  std::string invariant_violation() const {
    std::ostringstream msg;
    if (const T d = hermitian_defect(m_); !(d <= kHermitianTolerance)) {
      msg << "not Hermitian (max |rho - rho^dag| = " << d << ")";
    } else if (const T t = std::abs(m_.trace() - std::complex<T>(1)); !(t <= kTraceTolerance)) {
      msg << "trace deviates from 1 by " << t;
    } else if (const T e = min_eigenvalue(); !(e >= -kPsdTolerance)) {
      msg << "not positive semidefinite (min eigenvalue " << e << ")";
    }
    return msg.str();
  }

  /// Throws NumericalError when a computed state has drifted out of tolerance.
  void check_invariants() const {
    if (const std::string problem = invariant_violation(); !problem.empty()) {
      throw NumericalError("DensityMatrix: " + problem);
    }
  }

 private:
  struct Unchecked {};

  DensityMatrix(Matrix m, Unchecked) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw ValidationError("DensityMatrix: matrix is not square");
    }
    n_qubits_ = detail::qubits_for_dimension(m_.rows(), "DensityMatrix");
  }

  static Eigen::Index dimension_for(int n_qubits) {
    if (n_qubits < 1) throw ValidationError("DensityMatrix: n_qubits must be >= 1");
    if (n_qubits > kMaxQubits) {
      throw CapacityError("DensityMatrix: " + std::to_string(n_qubits) +
                          " qubits exceeds limit of " + std::to_string(kMaxQubits));
    }
    return Eigen::Index{1} << n_qubits;
  }

  Matrix m_;
  int n_qubits_ = 0;
};

/// Tr₁ ρ: discards qubit 0 and returns the state of the remaining N-1 qubits.
template <typename T>
DensityMatrix<T> partial_trace_first(const DensityMatrix<T>& rho) {
  if (rho.n_qubits() < 2) {
    throw DomainError("partial_trace_first: needs at least 2 qubits");
  }
  const Eigen::Index half = rho.dimension() / 2;
  const auto& m = rho.matrix();
  return DensityMatrix<T>::trusted(m.topLeftCorner(half, half) + m.bottomRightCorner(half, half));
}

template <typename T>
T frobenius_distance(const ComplexMatrix<T>& a, const ComplexMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("frobenius_distance: dimension mismatch");
  }
  return (a - b).norm();
}

template <typename T>
T frobenius_distance(const DensityMatrix<T>& a, const DensityMatrix<T>& b) {
  return frobenius_distance(a.matrix(), b.matrix());
}

// ---------------------------------------------------------------------------
// Pauli strings

enum class Pauli : std::uint8_t { I, X, Y, Z };

char pauli_symbol(Pauli p);
Pauli pauli_from_symbol(char c);

template <typename T = double>
ComplexMatrix<T> pauli_matrix(Pauli p) {
  using C = std::complex<T>;
  ComplexMatrix<T> m(2, 2);
  switch (p) {
    case Pauli::I: m << C(1), C(0), C(0), C(1); break;
    case Pauli::X: m << C(0), C(1), C(1), C(0); break;
    case Pauli::Y: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case Pauli::Z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

/// Tensor product of single-qubit Paulis, factor 0 acting on qubit 0.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> factors);

  /// "ZIX" style, leftmost character is qubit 0.
  static PauliString parse(std::string_view text);
  static PauliString single(int n_qubits, int qubit, Pauli p);
  static PauliString pair(int n_qubits, int qubit_a, Pauli a, int qubit_b, Pauli b);

  int n_qubits() const noexcept { return static_cast<int>(factors_.size()); }
  const std::vector<Pauli>& factors() const noexcept { return factors_; }
  Pauli operator[](int qubit) const { return factors_.at(static_cast<std::size_t>(qubit)); }
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> factors_;
};

template <typename T = double>
ComplexMatrix<T> pauli_matrix(const PauliString& p) {
  if (p.n_qubits() < 1) throw ValidationError("pauli_matrix: empty Pauli string");
  if (p.n_qubits() > kMaxQubits) {
    throw CapacityError("pauli_matrix: " + std::to_string(p.n_qubits()) +
                        " qubits exceeds limit of " + std::to_string(kMaxQubits));
  }
  ComplexMatrix<T> out = pauli_matrix<T>(p[0]);
  for (int q = 1; q < p.n_qubits(); ++q) {
    out = kron(out, pauli_matrix<T>(p[q]));
  }
  return out;
}

/// Tr[B ρ] for a Hermitian observable B; the imaginary residue must be below 1e-9.
template <typename T, typename Derived>
T expectation(const DensityMatrix<T>& rho, const Eigen::MatrixBase<Derived>& observable) {
  if (observable.rows() != rho.dimension() || observable.cols() != rho.dimension()) {
    throw ValidationError("expectation: observable dimension " + std::to_string(observable.rows()) +
                          " does not match state dimension " + std::to_string(rho.dimension()));
  }
  const std::complex<T> value = observable.cwiseProduct(rho.matrix().transpose()).sum();
  if (std::abs(value.imag()) > T(1e-9)) {
    std::ostringstream msg;
    msg << "expectation: imaginary residue " << value.imag() << " exceeds 1e-9";
    throw NumericalError(msg.str());
  }
  return value.real();
}

template <typename T>
T expectation(const DensityMatrix<T>& rho, const PauliString& p) {
  if (p.n_qubits() != rho.n_qubits()) {
    throw ValidationError("expectation: Pauli string has " + std::to_string(p.n_qubits()) +
                          " qubits, state has " + std::to_string(rho.n_qubits()));
  }
  return expectation(rho, pauli_matrix<T>(p));
}

}  // namespace qrc
