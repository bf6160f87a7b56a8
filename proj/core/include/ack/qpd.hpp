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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ack/circuit.hpp"
#include "ack/linalg.hpp"

namespace ack {

enum class Side { A, B };

/// One outcome of a local operation: rho -> sign * K rho K^dagger.
struct ChannelOutcome {
  double sign = 1.0;
  Mat2 op = Mat2::Identity();
};

/// Local operation on one side of a cut gate. Unitaries have one outcome;
/// the signed Z measurement has two (|0><0| with +1, |1><1| with -1).
struct ChannelElement {
  Side side = Side::A;
  std::string label;
  std::vector<ChannelOutcome> outcomes;
};

struct QpdTerm {
  double coeff = 0.0;
  ChannelElement a;
  ChannelElement b;
};

struct LocalDressing {
  Mat2 pre_a = Mat2::Identity();
  Mat2 pre_b = Mat2::Identity();
  Mat2 post_a = Mat2::Identity();
  Mat2 post_b = Mat2::Identity();
};

/// u rho u^dagger = (post (x) post) [sum_k c_k (E_a,k (x) E_b,k)((pre (x) pre) rho (pre (x) pre)^dagger)] (post (x) post)^dagger
struct GateQPD {
  std::vector<QpdTerm> terms;
  double gamma = 1.0;
  Mat4 source_gate = Mat4::Identity();
  LocalDressing dressing;
  std::array<double, 3> angles{};  // (theta_x, theta_y, theta_z)
};

/// Decomposition of exp(i theta Z (x) Z) over {I, Z, e^{+-i pi/4 Z}, signed Z measurement}
/// per side. Coefficients come from a least-squares solve of the channel
/// identity; throws VerificationError if it does not close.
GateQPD qpd_zz(double theta);

/// Product of per-factor decompositions of the KAK core of u.
GateQPD gate_qpd(const Mat4& u);

/// Terms with the dressing folded into every outcome operator.
std::vector<QpdTerm> dressed_terms(const GateQPD& q);

/// Largest deviation of the channel identity over the 16 operators |i><j|,
/// together with the trace identity.
double verify_qpd(const GateQPD& q);

struct CutGateRef {
  int cut = 0;    // index into CutPlan::cuts
  int layer = 0;
  int bond = 0;
  Mat4 unitary = Mat4::Identity();
};

struct CutPlan {
  std::vector<int> cuts;
  std::vector<CutGateRef> cut_gates;  // cut-major, ascending layer
  std::vector<GateQPD> qpds;          // one per cut gate
  double total_gamma = 1.0;
};

/// Decomposes every gate of `full` that sits on a cut bond.
CutPlan make_cut_plan(const StaircaseCircuit& full, std::span<const int> cuts);

double total_gamma(const CutPlan& plan);

inline constexpr std::uint64_t kDefaultBranchGuard = 1'000'000;

struct Branch {
  double weight = 1.0;       // product of the chosen coefficients
  std::vector<int> choice;   // term index per cut gate
};

/// Mixed-radix walk over all term combinations of a plan.
class BranchEnumerator {
 public:
  /// Throws GuardError when the branch count exceeds guard.
  explicit BranchEnumerator(const CutPlan& plan, std::uint64_t guard = kDefaultBranchGuard);
  std::uint64_t size() const { return size_; }
  /// Fills the next branch; returns false when exhausted.
  bool next(Branch& out);

 private:
  const CutPlan* plan_;
  std::vector<int> radix_;
  std::vector<int> digits_;
  std::uint64_t size_ = 1;
  std::uint64_t emitted_ = 0;
};

}  // namespace ack
