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


// Seeded random fixtures shared by the unit tests.

#pragma once

#include <complex>
#include <cstdint>

#include "qrc/linalg.hpp"
#include "qrc/random.hpp"

namespace qrc::testing {

inline ComplexMatrix<> random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix<> m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  }
  return m;
}

inline ComplexMatrix<> random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix<> a = random_complex(dim, dim, rng);
  return (a + a.adjoint()) / 2.0;
}

/// Mixed state A A† / Tr(A A†).
inline DensityMatrix<> random_density(int n_qubits, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const ComplexMatrix<> a = random_complex(dim, dim, rng);
  ComplexMatrix<> rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix<>(rho);
}

}  // namespace qrc::testing
