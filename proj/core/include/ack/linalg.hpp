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

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ack {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr cplx kI{0.0, 1.0};

struct SvdResult {
  ComplexMatrix u;
  Eigen::VectorXd s;  // non-increasing
  ComplexMatrix vh;   // V^dagger
};

/// Thin SVD, m = u * diag(s) * vh. Rejects non-finite input.
SvdResult svd(const ComplexMatrix& m);

/// Unitary W maximizing Re tr(W^dagger env), i.e. the polar factor U V^dagger.
ComplexMatrix polar_update(const ComplexMatrix& env);

bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);
bool all_finite(const ComplexMatrix& m);

/// Single-qubit Pauli by label: I, X, Y, Z.
Mat2 pauli(char label);

enum class PauliPair { XX, YY, ZZ };

/// exp(i theta P (x) P).
Mat4 pauli_rotation(PauliPair pair, double theta);

Mat4 kron(const Mat2& a, const Mat2& b);

class StreamRng;

/// Haar-random unitary of the given dimension (QR of a Ginibre matrix).
ComplexMatrix haar_unitary(int dim, StreamRng& rng);
/// Ginibre matrix with standard complex normal entries.
ComplexMatrix random_matrix(int rows, int cols, StreamRng& rng);

namespace gates {
Mat2 hadamard();
Mat2 phase_s();  // diag(1, i)
Mat4 cnot();     // control on the left qubit
Mat4 swap();
}  // namespace gates

}  // namespace ack
