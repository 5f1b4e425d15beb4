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

#include "qrc/linalg.hpp"

namespace qrc {

char pauli_symbol(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_symbol(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw ValidationError(std::string("unknown Pauli symbol '") + c + "'");
}

PauliString::PauliString(std::vector<Pauli> factors) : factors_(std::move(factors)) {
  if (factors_.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw CapacityError("PauliString: " + std::to_string(factors_.size()) +
                        " qubits exceeds limit of " + std::to_string(kMaxQubits));
  }
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> factors;
  factors.reserve(text.size());
  for (char c : text) factors.push_back(pauli_from_symbol(c));
  return PauliString(std::move(factors));
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw ValidationError("PauliString::single: qubit index out of range");
  }
  std::vector<Pauli> factors(static_cast<std::size_t>(n_qubits), Pauli::I);
  factors[static_cast<std::size_t>(qubit)] = p;
  return PauliString(std::move(factors));
}

PauliString PauliString::pair(int n_qubits, int qubit_a, Pauli a, int qubit_b, Pauli b) {
  if (qubit_a == qubit_b) throw ValidationError("PauliString::pair: qubits must differ");
  if (qubit_a < 0 || qubit_a >= n_qubits || qubit_b < 0 || qubit_b >= n_qubits) {
    throw ValidationError("PauliString::pair: qubit index out of range");
  }
  std::vector<Pauli> factors(static_cast<std::size_t>(n_qubits), Pauli::I);
  factors[static_cast<std::size_t>(qubit_a)] = a;
  factors[static_cast<std::size_t>(qubit_b)] = b;
  return PauliString(std::move(factors));
}

std::string PauliString::to_string() const {
  std::string out;
  out.reserve(factors_.size());
  for (Pauli p : factors_) out.push_back(pauli_symbol(p));
  return out;
}

}  // namespace qrc
