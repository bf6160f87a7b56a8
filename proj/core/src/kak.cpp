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
#include "ack/kak.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ack/error.hpp"

namespace ack {
namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

const Mat4& magic_basis() {
  static const Mat4 m = [] {
    Mat4 b;
    b << 1, 0, 0, kI,
         0, kI, 1, 0,
         0, kI, -1, 0,
         1, 0, 0, -kI;
    return Mat4(b / std::sqrt(2.0));
  }();
  return m;
}

// Diagonal of M^dagger (P (x) P) M; entries are +-1.
Eigen::Vector4d magic_signs(char p) {
  const Mat2 s = pauli(p);
  const Mat4 d = magic_basis().adjoint() * kron(s, s) * magic_basis();
  return d.diagonal().real();
}

// Working state of the canonicalization:
// u = phase * (post_a (x) post_b) core(theta) (pre_a (x) pre_b).
struct Tracker {
  KakDecomposition k;
  double& angle(int axis) {
    return axis == 0 ? k.theta_x : axis == 1 ? k.theta_y : k.theta_z;
  }

  // theta_axis -> theta_axis - sign * pi/2.
  void shift(int axis, int sign) {
    const Mat2 p = pauli("XYZ"[axis]);
    angle(axis) -= sign * kHalfPi;
    k.pre_a = p * k.pre_a;
    k.pre_b = p * k.pre_b;
    k.global_phase *= sign > 0 ? kI : -kI;
  }

  // Negates the two angles other than keep_axis, conjugating by R (x) I.
  void negate_pair(int keep_axis) {
    const Mat2 r = pauli("XYZ"[keep_axis]);
    for (int a = 0; a < 3; ++a)
      if (a != keep_axis) angle(a) = -angle(a);
    k.post_a = k.post_a * r;
    k.pre_a = r * k.pre_a;
  }

  // Exchanges two angles using a local Clifford V with V P V^dag = +-Q.
  void swap_axes(int a, int b) {
    if (a > b) std::swap(a, b);
    Mat2 v;
    if (a == 0 && b == 1) {
      v = gates::phase_s();
    } else if (a == 0 && b == 2) {
      v = gates::hadamard();
    } else {
      v = (Mat2::Identity() + kI * pauli('X')) / std::sqrt(2.0);
    }
    std::swap(angle(a), angle(b));
    k.post_a = k.post_a * v.adjoint();
    k.post_b = k.post_b * v.adjoint();
    k.pre_a = v * k.pre_a;
    k.pre_b = v * k.pre_b;
  }

  void canonicalize() {
    for (int a = 0; a < 3; ++a) {
      const int steps = static_cast<int>(std::floor((angle(a) + kQuarterPi) / kHalfPi));
      for (int s = 0; s < std::abs(steps); ++s) shift(a, steps > 0 ? 1 : -1);
    }
    auto mag = [&](int a) { return std::abs(angle(a)); };
    if (mag(0) < mag(1)) swap_axes(0, 1);
    if (mag(1) < mag(2)) swap_axes(1, 2);
    if (mag(0) < mag(1)) swap_axes(0, 1);
    if (k.theta_x < 0 && k.theta_y < 0) {
      negate_pair(2);
    } else if (k.theta_x < 0) {
      negate_pair(1);
    } else if (k.theta_y < 0) {
      negate_pair(0);
    }
  }
};

}  // namespace

Mat4 KakDecomposition::core() const {
  return pauli_rotation(PauliPair::XX, theta_x) * pauli_rotation(PauliPair::YY, theta_y) *
         pauli_rotation(PauliPair::ZZ, theta_z);
}

Mat4 KakDecomposition::reassemble() const {
  return global_phase * kron(post_a, post_b) * core() * kron(pre_a, pre_b);
}

std::pair<Mat2, Mat2> split_tensor_product(const Mat4& k) {
  // Rearranged so that A (x) B becomes the rank-1 matrix vec(A) vec(B)^T.
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) r(2 * i + j, 2 * p + q) = k(2 * i + p, 2 * j + q);
  Eigen::JacobiSVD<Mat4> dec(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s0 = std::sqrt(dec.singularValues()(0));
  const Eigen::Vector4cd va = s0 * dec.matrixU().col(0);
  const Eigen::Vector4cd vb = s0 * dec.matrixV().col(0).conjugate();
  Mat2 a, b;
  a << va(0), va(1), va(2), va(3);
  b << vb(0), vb(1), vb(2), vb(3);
  return {a, b};
}

KakDecomposition kak_decompose(const Mat4& u) {
  if (!all_finite(u) || !is_unitary(u, 1e-10))
    throw InvalidArgument("kak_decompose: input is not unitary");

  const Mat4& mb = magic_basis();
  const cplx det_root = std::pow(u.determinant(), 0.25);
  const Mat4 up = mb.adjoint() * (u / det_root) * mb;  // in SU(4), magic frame
  const Mat4 p = up.transpose() * up;                 // symmetric unitary

  // Re(P) and Im(P) commute; a generic real combination shares eigenvectors.
  Eigen::Matrix4d q;
  bool found = false;
  for (double r : {0.6180339887498949, 1.4142135623730951, 0.2718281828459045,
                   3.1415926535897931, -0.5772156649015329}) {
    const Eigen::Matrix4d comb = p.real() + r * p.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(comb);
    q = es.eigenvectors();
    Mat4 d = q.transpose().cast<cplx>() * p * q.cast<cplx>();
    d.diagonal().setZero();
    if (d.cwiseAbs().maxCoeff() < 1e-9) {
      found = true;
      break;
    }
  }
  if (!found) throw VerificationError("kak_decompose: simultaneous diagonalization failed");
  if (q.determinant() < 0) q.col(0) *= -1.0;

  const Mat4 pdiag = q.transpose().cast<cplx>() * p * q.cast<cplx>();
  Eigen::Vector4cd d;
  for (int i = 0; i < 4; ++i) d(i) = std::sqrt(pdiag(i, i));
  Mat4 o1c = up * q.cast<cplx>();
  for (int i = 0; i < 4; ++i) o1c.col(i) /= d(i);
  Eigen::Matrix4d o1 = o1c.real();
  if (o1.determinant() < 0) {
    o1.col(0) *= -1.0;
    d(0) = -d(0);
  }

  // d_k = exp(i(a x_k + b y_k + c z_k + g)); the sign vectors are orthogonal.
  const Eigen::Vector4d sx = magic_signs('X');
  const Eigen::Vector4d sy = magic_signs('Y');
  const Eigen::Vector4d sz = magic_signs('Z');
  Eigen::Vector4d phi;
  for (int i = 0; i < 4; ++i) phi(i) = std::arg(d(i));

  Tracker t;
  t.k.theta_x = 0.25 * sx.dot(phi);
  t.k.theta_y = 0.25 * sy.dot(phi);
  t.k.theta_z = 0.25 * sz.dot(phi);
  t.k.global_phase = det_root * std::exp(kI * (0.25 * phi.sum()));

  const Mat4 left = mb * o1.cast<cplx>() * mb.adjoint();
  const Mat4 right = mb * q.transpose().cast<cplx>() * mb.adjoint();
  std::tie(t.k.post_a, t.k.post_b) = split_tensor_product(left);
  std::tie(t.k.pre_a, t.k.pre_b) = split_tensor_product(right);

  t.canonicalize();

  const double err = (t.k.reassemble() - u).cwiseAbs().maxCoeff();
  if (err > 1e-9)
    throw VerificationError("kak_decompose: reassembly residual " + std::to_string(err));
  return t.k;
}

}  // namespace ack
