// Copyright 2026 The ACK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <span>
#include <vector>

#include "ack/linalg.hpp"
#include "ack/pauli.hpp"

namespace ack {

inline constexpr int kMaxStatevectorQubits = 24;

/// Dense amplitudes; site 0 is the most significant bit of the index.
struct Statevector {
  int n_qubits = 0;
  ComplexVector amplitudes;
  /// Cleared once a non-unitary operator has been applied.
  bool normalized = true;

  static Statevector zero(int n_qubits);
  /// Tensor product of normalized single-qubit vectors.
  static Statevector product(std::span<const Eigen::Vector2cd> locals);

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Applies a 2^k x 2^k operator to the listed sites (first site = most
/// significant bit of the operator index).
Statevector sv_apply(const Statevector& state, const ComplexMatrix& op,
                     std::span<const int> sites);
void sv_apply_inplace(Statevector& state, const ComplexMatrix& op,
                      std::span<const int> sites);

/// <psi|P|psi> for one Pauli string (complex in general).
cplx sv_pauli_expectation(const Statevector& state, const PauliString& p);

/// Sum of coeff * <psi|P|psi>; no renormalization.
double sv_expectation(const Statevector& state, const PauliTermList& terms);

cplx sv_inner(const Statevector& a, const Statevector& b);

}  // namespace ack
