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
#include <cmath>
#include <complex>

#include "gtest/gtest.h"

#include "ack/error.hpp"
#include "ack/knitting.hpp"
#include "ack/rng.hpp"
#include "ack/statevector.hpp"
#include "test_util.hpp"

namespace ack {
namespace {

Statevector run_dense(const StaircaseCircuit& c) {
  auto sv = Statevector::zero(c.n_qubits);
  for (const auto& g : c.gates) {
    const std::array<int, 2> q = {g.site, g.site + 1};
    sv_apply_inplace(sv, g.unitary, q);
  }
  return sv;
}

double dense_value(const StaircaseCircuit& c, const PauliTermList& obs) {
  const auto sv = run_dense(c);
  const ComplexMatrix o = testing::dense_operator(obs, c.n_qubits);
  return sv.amplitudes.dot(o * sv.amplitudes).real();
}

Mat4 zz_core(double theta, StreamRng& rng) {
  Mat4 core = Mat4::Zero();
  core.diagonal() << std::polar(1.0, theta), std::polar(1.0, -theta), std::polar(1.0, -theta),
      std::polar(1.0, theta);
  const Mat4 pre = kron(Mat2(haar_unitary(2, rng)), Mat2(haar_unitary(2, rng)));
  const Mat4 post = kron(Mat2(haar_unitary(2, rng)), Mat2(haar_unitary(2, rng)));
  return post * core * pre;
}

// Random staircase whose gates on the cut bonds have a single ZZ factor.
StaircaseCircuit cut_friendly(int n, int m, const std::vector<int>& cuts, std::uint64_t seed) {
  auto c = init_circuit(n, m, CircuitInit::seeded_random, seed);
  StreamRng rng(seed, 77);
  for (int b : cuts)
    for (int l = 0; l < m; ++l) c.gate(l, b) = zz_core(0.2 + 0.3 * rng.uniform(), rng);
  return c;
}

PauliTermList mixed_observable() {
  return {
      {0.7, PauliString({{4, 'Z'}, {5, 'Z'}})},
      {-0.3, PauliString({{0, 'X'}, {9, 'Y'}})},
      {0.5, PauliString({{3, 'Z'}})},
      {1.1, PauliString({{4, 'X'}, {5, 'X'}, {6, 'Z'}})},
      {0.2, PauliString({{2, 'Y'}, {7, 'Y'}})},
      {0.4, PauliString()},
  };
}

TEST(SubcircuitEval, NoInsertionsIsExpectation) {
  const auto c = init_circuit(5, 2, CircuitInit::seeded_random, 3);
  const PauliTermList obs = {{1.0, PauliString({{1, 'Z'}, {3, 'X'}})}, {0.5, PauliString({{0, 'Y'}})}};
  EXPECT_NEAR(subcircuit_eval(c, {}, obs), dense_value(c, obs), 1e-12);
  EXPECT_NEAR(subcircuit_eval(c, {}), 1.0, 1e-12);
}

TEST(SubcircuitEval, SignedMeasurementOnBasisStates) {
  StaircaseCircuit c = init_circuit(2, 1, CircuitInit::identity);
  ChannelElement mz{Side::A, "Mz", {{1.0, Mat2(Eigen::Vector2cd(1, 0).asDiagonal())},
                                    {-1.0, Mat2(Eigen::Vector2cd(0, 1).asDiagonal())}}};
  const std::vector<Insertion> ins = {{0, 1, true, mz}};
  EXPECT_NEAR(subcircuit_eval(c, ins), 1.0, 1e-14);
  c.gate(0, 0) = kron(Mat2::Identity(), pauli('X'));
  EXPECT_NEAR(subcircuit_eval(c, ins), -1.0, 1e-14);
  c.gate(0, 0) = kron(Mat2::Identity(), gates::hadamard());
  EXPECT_NEAR(subcircuit_eval(c, ins), 0.0, 1e-14);
}

TEST(SubcircuitEval, RejectsBadPositions) {
  const auto c = init_circuit(3, 2);
  ChannelElement id{Side::A, "I", {{1.0, Mat2::Identity()}}};
  const std::vector<Insertion> bad_layer = {{2, 0, false, id}};
  const std::vector<Insertion> bad_qubit = {{0, 3, false, id}};
  EXPECT_THROW(subcircuit_eval(c, bad_layer), InvalidArgument);
  EXPECT_THROW(subcircuit_eval(c, bad_qubit), InvalidArgument);
}

TEST(KnitExact, BellPairAcrossCnotCut) {
  StaircaseCircuit c = init_circuit(2, 2, CircuitInit::identity);
  c.gate(0, 0) = kron(gates::hadamard(), Mat2::Identity());
  c.gate(1, 0) = gates::cnot();
  const std::vector<int> cuts = {0};
  const auto plan = make_cut_plan(c, cuts);
  EXPECT_NEAR(plan.total_gamma, 3.0, 1e-12);
  EXPECT_NEAR(knit_exact(c, plan, {{1.0, PauliString({{0, 'Z'}, {1, 'Z'}})}}).value, 1.0, 1e-12);
  EXPECT_NEAR(knit_exact(c, plan, {{1.0, PauliString({{0, 'X'}, {1, 'X'}})}}).value, 1.0, 1e-12);
  EXPECT_NEAR(knit_exact(c, plan, {{1.0, PauliString({{0, 'Y'}, {1, 'Y'}})}}).value, -1.0, 1e-12);
  EXPECT_NEAR(knit_exact(c, plan, {{1.0, PauliString({{0, 'Z'}})}}).value, 0.0, 1e-12);
}

TEST(KnitExact, MatchesDenseOneCut) {
  const std::vector<int> cuts = {4};
  const auto c = cut_friendly(10, 2, cuts, 11);
  const auto plan = make_cut_plan(c, cuts);
  const auto obs = mixed_observable();
  const auto est = knit_exact(c, plan, obs);
  EXPECT_EQ(est.n_branches, 36u);
  EXPECT_NEAR(est.value, dense_value(c, obs), 1e-8);
}

TEST(KnitExact, MatchesDenseTwoCuts) {
  const std::vector<int> cuts = {2, 6};
  const auto c = cut_friendly(10, 2, cuts, 12);
  const auto obs = mixed_observable();
  EXPECT_NEAR(knit_exact(c, make_cut_plan(c, cuts), obs).value, dense_value(c, obs), 1e-8);
}

TEST(KnitExact, MatchesDenseGeneralGates) {
  const std::vector<int> cuts = {2};
  const auto c = init_circuit(6, 1, CircuitInit::seeded_random, 13);
  const PauliTermList obs = {{1.0, PauliString({{2, 'X'}, {3, 'Y'}})}, {-0.5, PauliString({{1, 'Z'}, {4, 'Z'}})}};
  const auto est = knit_exact(c, make_cut_plan(c, cuts), obs);
  EXPECT_NEAR(est.value, dense_value(c, obs), 1e-8);
}

TEST(KnitExact, IndependentOfLanes) {
  const std::vector<int> cuts = {4};
  const auto c = cut_friendly(10, 2, cuts, 14);
  const auto plan = make_cut_plan(c, cuts);
  const auto obs = mixed_observable();
  const double one = knit_exact(c, plan, obs, {kDefaultBranchGuard, 1}).value;
  EXPECT_EQ(one, knit_exact(c, plan, obs, {kDefaultBranchGuard, 4}).value);
  EXPECT_EQ(one, knit_exact(c, plan, obs, {kDefaultBranchGuard, 8}).value);
}

TEST(KnitExact, GuardRefusesHugePlans) {
  const std::vector<int> cuts = {2};
  const auto c = init_circuit(5, 6, CircuitInit::seeded_random, 15);
  try {
    knit_exact(c, make_cut_plan(c, cuts), {{1.0, PauliString({{0, 'Z'}})}});
    FAIL() << "expected GuardError";
  } catch (const GuardError& e) {
    EXPECT_NE(std::string(e.what()).find("monte_carlo"), std::string::npos);
  }
}

TEST(KnitSampled, Deterministic) {
  const std::vector<int> cuts = {4};
  const auto c = cut_friendly(10, 2, cuts, 16);
  const auto plan = make_cut_plan(c, cuts);
  const auto obs = mixed_observable();
  const auto a = knit_sampled(c, plan, obs, 2000, 5);
  const auto b = knit_sampled(c, plan, obs, 2000, 5, 10, {kDefaultBranchGuard, 4});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.value, knit_sampled(c, plan, obs, 2000, 6).value);
  EXPECT_EQ(a.mode, KnitMode::monte_carlo);
  EXPECT_EQ(a.n_samples, 2000u);
}

TEST(KnitSampled, UnbiasedAndShrinking) {
  const std::vector<int> cuts = {4};
  const auto c = cut_friendly(10, 2, cuts, 17);
  const auto plan = make_cut_plan(c, cuts);
  const auto obs = mixed_observable();
  const double exact = knit_exact(c, plan, obs).value;
  const auto small = knit_sampled(c, plan, obs, 200, 1);
  const auto large = knit_sampled(c, plan, obs, 20000, 1);
  EXPECT_LT(std::abs(large.value - exact), 5.0 * large.std_error);
  EXPECT_LT(large.std_error, small.std_error / 4.0);
  EXPECT_GT(large.std_error, small.std_error / 20.0);
}

TEST(KnitSampled, SingleRepetitionUsesSampleSpread) {
  const std::vector<int> cuts = {0};
  StaircaseCircuit c = init_circuit(2, 2, CircuitInit::identity);
  c.gate(0, 0) = kron(gates::hadamard(), Mat2::Identity());
  c.gate(1, 0) = gates::cnot();
  const auto est = knit_sampled(c, make_cut_plan(c, cuts), {{1.0, PauliString({{0, 'Z'}, {1, 'Z'}})}}, 4000, 9, 1);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_LT(std::abs(est.value - 1.0), 5.0 * est.std_error);
}

TEST(KnitSampled, RejectsZeroSamples) {
  const std::vector<int> cuts = {0};
  const auto c = init_circuit(2, 1);
  EXPECT_THROW(knit_sampled(c, make_cut_plan(c, cuts), {}, 0, 1), InvalidArgument);
}

}  // namespace
}  // namespace ack
