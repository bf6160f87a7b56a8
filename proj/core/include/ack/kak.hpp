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

#include "ack/linalg.hpp"

namespace ack {

/// u = global_phase * (post_a (x) post_b) * exp(i(tx XX + ty YY + tz ZZ))
///       * (pre_a (x) pre_b)
/// with angles folded into the Weyl chamber pi/4 >= tx >= ty >= |tz|.
struct KakDecomposition {
  Mat2 pre_a = Mat2::Identity();
  Mat2 pre_b = Mat2::Identity();
  Mat2 post_a = Mat2::Identity();
  Mat2 post_b = Mat2::Identity();
  double theta_x = 0.0;
  double theta_y = 0.0;
  double theta_z = 0.0;
  cplx global_phase = 1.0;

  /// exp(i(tx XX + ty YY + tz ZZ)).
  Mat4 core() const;
  Mat4 reassemble() const;
};

/// Cartan (KAK) decomposition of a two-qubit unitary via the magic basis.
/// Throws InvalidArgument for non-unitary input and VerificationError if the
/// reassembled product misses the input by more than 1e-9.
KakDecomposition kak_decompose(const Mat4& u);

/// Splits a 4x4 operator that is (numerically) a tensor product A (x) B.
std::pair<Mat2, Mat2> split_tensor_product(const Mat4& k);

}  // namespace ack
