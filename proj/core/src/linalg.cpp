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
#include "ack/linalg.hpp"

#include <cmath>

#include "ack/error.hpp"
#include "ack/rng.hpp"

namespace ack {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

SvdResult svd(const ComplexMatrix& m) {
  ACK_REQUIRE(m.rows() > 0 && m.cols() > 0, "svd: empty matrix");
  if (!all_finite(m)) throw InvalidArgument("svd: non-finite entries");
  Eigen::BDCSVD<ComplexMatrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw VerificationError("svd: decomposition failed");
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV().adjoint()};
}

ComplexMatrix polar_update(const ComplexMatrix& env) {
  ACK_REQUIRE(env.rows() == env.cols(), "polar_update: matrix must be square");
  // Full square factors, so rank-deficient inputs still yield a unitary.
  if (!all_finite(env)) throw InvalidArgument("polar_update: non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> dec(env, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return dec.matrixU() * dec.matrixV().adjoint();
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix d = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Mat2 pauli(char label) {
  Mat2 p;
  switch (label) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -kI, kI, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw InvalidArgument(std::string("unknown Pauli label '") + label + "'");
  }
  return p;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat4 pauli_rotation(PauliPair pair, double theta) {
  ACK_REQUIRE(std::isfinite(theta), "pauli_rotation: non-finite angle");
  const char c = pair == PauliPair::XX ? 'X' : pair == PauliPair::YY ? 'Y' : 'Z';
  const Mat2 p = pauli(c);
  // (P (x) P)^2 = I, so the exponential is cos + i sin (P (x) P).
  return std::cos(theta) * Mat4::Identity() + kI * std::sin(theta) * kron(p, p);
}

ComplexMatrix random_matrix(int rows, int cols, StreamRng& rng) {
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

ComplexMatrix haar_unitary(int dim, StreamRng& rng) {
  const ComplexMatrix z = random_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

namespace gates {
Mat2 hadamard() {
  Mat2 h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}
Mat2 phase_s() {
  Mat2 s;
  s << 1, 0, 0, kI;
  return s;
}
Mat4 cnot() {
  Mat4 c = Mat4::Zero();
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
  return c;
}
Mat4 swap() {
  Mat4 c = Mat4::Zero();
  c(0, 0) = c(1, 2) = c(2, 1) = c(3, 3) = 1;
  return c;
}
}  // namespace gates

}  // namespace ack
