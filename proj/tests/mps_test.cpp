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
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

#include "ack/error.hpp"
#include "ack/mps.hpp"
#include "ack/rng.hpp"
#include "test_util.hpp"

namespace ack {
namespace {

using testing::ket0;
using testing::ket1;
using testing::ket_plus;

const double kLn2 = std::log(2.0);

MatrixProductState bell_pair() {
  std::vector<Eigen::Vector2cd> locals = {ket0(), ket0()};
  auto m = MatrixProductState::from_product_state(locals);
  m.apply_single_site(gates::hadamard(), 0);
  m.apply_two_site_exact(gates::cnot(), 0);
  return m;
}

MatrixProductState ghz(int n) {
  auto m = MatrixProductState::zero_state(n);
  m.apply_single_site(gates::hadamard(), 0);
  for (int i = 0; i + 1 < n; ++i) m.apply_two_site_exact(gates::cnot(), i);
  return m;
}

void expect_isometries(const MatrixProductState& m, int center, double tol) {
  for (int i = 0; i < m.n_sites(); ++i) {
    const auto& t = m.site(i);
    if (i < center) {
      const ComplexMatrix g = t[0].adjoint() * t[0] + t[1].adjoint() * t[1];
      EXPECT_LT((g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), tol)
          << "left isometry at " << i;
    } else if (i > center) {
      const ComplexMatrix g = t[0] * t[0].adjoint() + t[1] * t[1].adjoint();
      EXPECT_LT((g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), tol)
          << "right isometry at " << i;
    }
  }
}

TEST(Mps, ProductStates) {
  auto z = MatrixProductState::zero_state(4);
  EXPECT_NEAR(z.norm_squared(), 1.0, 1e-15);
  for (int b = 0; b < 3; ++b) EXPECT_EQ(z.bond_dim(b), 1);

  std::vector<Eigen::Vector2cd> locals = {ket_plus(), ket0()};
  const auto sv = to_statevector(MatrixProductState::from_product_state(locals));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(sv.amplitudes(0) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sv.amplitudes(1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sv.amplitudes(2) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sv.amplitudes(3)), 0.0, 1e-15);

  std::vector<Eigen::Vector2cd> bad = {Eigen::Vector2cd(1.0, 1.0)};
  EXPECT_THROW(MatrixProductState::from_product_state(bad), InvalidArgument);
}

TEST(Mps, CanonicalizePreservesStateAndIsometries) {
  StreamRng rng(1, 0);
  const auto m = MatrixProductState::random(6, 4, rng);
  for (int c = 0; c < 6; ++c) {
    const auto mc = canonicalized(m, c);
    EXPECT_GE(std::abs(overlap(m, mc)), 1.0 - 1e-12);
    expect_isometries(mc, c, 1e-10);
    const auto again = canonicalized(mc, c);
    EXPECT_GE(std::abs(overlap(mc, again)), 1.0 - 1e-12);
  }
  EXPECT_THROW(canonicalized(m, 6), InvalidArgument);

  auto p = MatrixProductState::zero_state(3);
  p.canonicalize(2);
  EXPECT_EQ(p.max_bond_dim(), 1);
  EXPECT_NEAR(std::abs(to_statevector(p).amplitudes(0)), 1.0, 1e-15);
}

TEST(Mps, BellPairSpectrum) {
  const auto b = bell_pair();
  const auto spec = schmidt_spectrum(b, 0);
  ASSERT_EQ(spec.lambdas.size(), 2u);
  EXPECT_NEAR(spec.lambdas[0], 0.70710678, 1e-8);
  EXPECT_NEAR(spec.lambdas[1], 0.70710678, 1e-8);
  const auto sv = to_statevector(b);
  EXPECT_NEAR(sv.amplitudes(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sv.amplitudes(3).real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Mps, ApplyTwoSiteUncappedIsExact) {
  auto m = MatrixProductState::zero_state(4);
  StreamRng rng(2, 0);
  const Truncation wide{64, 1e-12};
  for (int rep = 0; rep < 3; ++rep)
    for (int j = 0; j < 3; ++j)
      EXPECT_EQ(m.apply_two_site(haar_unitary(4, rng), j, wide), 0.0);
}

TEST(Mps, RandomCircuitMatchesDenseOracle) {
  const int n = 8;
  StreamRng rng(3, 0);
  auto m = MatrixProductState::zero_state(n);
  Statevector sv = Statevector::zero(n);
  for (int layer = 0; layer < 6; ++layer)
    for (int j = layer % 2; j + 1 < n; j += 2) {
      const Mat4 u = haar_unitary(4, rng);
      m.apply_two_site(u, j, Truncation{1 << 10, 0.0});
      const std::vector<int> sites = {j, j + 1};
      sv_apply_inplace(sv, u, sites);
      expect_isometries(m, j + 1, 1e-10);
    }
  EXPECT_GE(testing::fidelity(to_statevector(m), sv), 1.0 - 1e-10);
  EXPECT_NEAR(m.norm_squared(), 1.0, 1e-12);
}

TEST(Mps, TruncationCapsBondAndReportsWeight) {
  StreamRng rng(4, 0);
  auto m = MatrixProductState::random(8, 16, rng);
  const auto before = schmidt_spectrum(m, 3);
  double tail = 0.0;
  for (std::size_t i = 2; i < before.lambdas.size(); ++i) tail += before.lambdas[i] * before.lambdas[i];
  const double discarded = m.apply_two_site(Mat4::Identity(), 3, Truncation{2, 0.0});
  EXPECT_NEAR(discarded, tail, 1e-12);
  EXPECT_EQ(m.bond_dim(3), 2);
  EXPECT_NEAR(m.norm_squared(), 1.0, 1e-12);
}

TEST(Mps, NonUnitaryElementFlagsState) {
  auto m = bell_pair();
  Mat4 proj = Mat4::Zero();
  proj(0, 0) = 1.0;
  m.apply_two_site(proj, 0, Truncation{});
  EXPECT_FALSE(m.normalized());
  EXPECT_NEAR(m.norm_squared(), 0.5, 1e-14);
  EXPECT_THROW(schmidt_spectrum(m, 0), InvalidArgument);
  EXPECT_THROW(m.apply_two_site(proj, 1, Truncation{}), InvalidArgument);
}

TEST(Mps, SpectraOfKnownStates) {
  auto p = MatrixProductState::zero_state(3);
  auto s = schmidt_spectrum(p, 1);
  ASSERT_EQ(s.lambdas.size(), 1u);
  EXPECT_NEAR(s.lambdas[0], 1.0, 1e-15);

  auto g = ghz(4);
  s = schmidt_spectrum(g, 1);
  ASSERT_EQ(s.lambdas.size(), 2u);
  EXPECT_NEAR(s.lambdas[0], 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s.lambdas[1], 1 / std::sqrt(2.0), 1e-14);
  EXPECT_THROW(schmidt_spectrum(g, 3), InvalidArgument);
}

TEST(Entropy, ClosedForms) {
  const auto one = make_spectrum({1.0});
  const auto bell = make_spectrum({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
  EXPECT_EQ(entanglement_entropy(one), 0.0);
  EXPECT_NEAR(entanglement_entropy(bell), 0.693147, 1e-6);
  EXPECT_NEAR(renyi_entropy(bell, 2.0), kLn2, 1e-14);
  EXPECT_NEAR(renyi_entropy(bell, 0.5), kLn2, 1e-14);
  EXPECT_EQ(state_gamma(one), 1.0);
  EXPECT_NEAR(state_gamma(bell), 3.0, 1e-14);
  EXPECT_THROW(renyi_entropy(bell, 1.0), InvalidArgument);
  EXPECT_THROW(renyi_entropy(bell, -0.5), InvalidArgument);
  EXPECT_THROW(make_spectrum({0.5, 0.5}), InvalidArgument);
}

BondSpectrum random_spectrum(StreamRng& rng, int k) {
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    x = x * x * x;  // heavier tails spread the spectra out
    total += x;
  }
  std::vector<double> l;
  for (double x : w) l.push_back(std::sqrt(x / total));
  return make_spectrum(std::move(l));
}

TEST(Entropy, RenyiChainAndGammaIdentity) {
  StreamRng rng(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = random_spectrum(rng, 1 + trial % 17);
    const double s_half = renyi_entropy(spec, 0.5);
    const double s_vn = entanglement_entropy(spec);
    const double s_two = renyi_entropy(spec, 2.0);
    EXPECT_GE(s_half, s_vn - 1e-12);
    EXPECT_GE(s_vn, s_two - 1e-12);
    EXPECT_NEAR(state_gamma(spec), 2.0 * std::exp(s_half) - 1.0, 1e-10);
    EXPECT_NEAR(renyi_entropy(spec, 1.0 + 1e-4), s_vn, 1e-3 * std::max(1.0, s_vn));
    EXPECT_NEAR(0.5 * (renyi_entropy(spec, 1.0 + 1e-4) + renyi_entropy(spec, 1.0 - 1e-4)),
                s_vn, 1e-6);
  }
}

TEST(Entropy, MatchesDensePartialTrace) {
  StreamRng rng(6, 0);
  const auto m = MatrixProductState::random(8, 8, rng);
  const auto sv = to_statevector(m);
  const auto heat = entropy_heatmap(m);
  ASSERT_EQ(heat.size(), 7u);
  for (int b = 0; b < 7; ++b) {
    EXPECT_NEAR(heat[b], testing::dense_entropy(sv, b), 1e-10);
    EXPECT_NEAR(entanglement_entropy(schmidt_spectrum(m, b)), heat[b], 1e-12);
  }
}

TEST(Entropy, HeatmapsOfKnownStates) {
  for (double v : entropy_heatmap(MatrixProductState::zero_state(5))) EXPECT_EQ(v, 0.0);
  for (double v : entropy_heatmap(ghz(6))) EXPECT_NEAR(v, kLn2, 1e-12);
}

TEST(Entropy, GammaInvariantUnderLocalUnitaries) {
  StreamRng rng(7, 0);
  auto m = MatrixProductState::random(6, 4, rng);
  std::vector<double> before;
  for (const auto& s : all_spectra(m)) before.push_back(state_gamma(s));
  for (int i = 0; i < 6; ++i) m.apply_single_site(haar_unitary(2, rng), i);
  const auto after = all_spectra(m);
  for (int b = 0; b < 5; ++b) EXPECT_NEAR(state_gamma(after[b]), before[b], 1e-10);
}

TEST(Expectation, MatchesDenseOracle) {
  StreamRng rng(8, 0);
  const auto m = MatrixProductState::random(10, 8, rng);
  const auto sv = to_statevector(m);
  PauliTermList terms = {{0.3, PauliString::dense("Z", 0)},
                         {-1.2, PauliString::dense("XX", 4)},
                         {0.7, PauliString({{2, 'Y'}, {7, 'Z'}})},
                         {0.5, PauliString({{1, 'X'}, {3, 'Y'}, {9, 'Z'}})},
                         {2.0, PauliString()}};
  EXPECT_NEAR(expectation_local(m, terms), sv_expectation(sv, terms), 1e-10);
  EXPECT_THROW(expectation_local(m, {{1.0, PauliString::dense("Z", 10)}}), InvalidArgument);

  const auto bell = bell_pair();
  EXPECT_NEAR(expectation_local(bell, {{1.0, PauliString::dense("ZZ")}}), 1.0, 1e-14);
  EXPECT_NEAR(expectation_local(MatrixProductState::zero_state(1), {{1.0, PauliString::dense("Z")}}),
              1.0, 1e-15);
}

TEST(Overlap, Examples) {
  StreamRng rng(9, 0);
  const auto a = MatrixProductState::random(8, 6, rng);
  const auto b = MatrixProductState::random(8, 6, rng);
  EXPECT_NEAR(std::abs(overlap(a, a)), 1.0, 1e-12);
  const cplx dense = sv_inner(to_statevector(a), to_statevector(b));
  EXPECT_LT(std::abs(overlap(a, b) - dense), 1e-10);

  std::vector<Eigen::Vector2cd> zeros(4, ket0()), ones(4, ket1());
  EXPECT_EQ(std::abs(overlap(MatrixProductState::from_product_state(zeros),
                             MatrixProductState::from_product_state(ones))),
            0.0);
  EXPECT_THROW(overlap(a, MatrixProductState::zero_state(3)), InvalidArgument);
}

TEST(Partition, ProductStateSplitsExactly) {
  std::vector<Eigen::Vector2cd> locals = {ket0(), ket_plus(), ket1(), ket_plus(), ket0()};
  const auto m = MatrixProductState::from_product_state(locals);
  const std::vector<int> cuts = {1, 2};
  const auto parts = partition_at(m, cuts);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].n_sites(), 2);
  EXPECT_EQ(parts[1].n_sites(), 1);
  EXPECT_EQ(parts[2].n_sites(), 2);
  std::vector<Eigen::Vector2cd> l0 = {ket0(), ket_plus()}, l2 = {ket_plus(), ket0()};
  EXPECT_NEAR(std::abs(overlap(parts[0], MatrixProductState::from_product_state(l0))), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(overlap(parts[2], MatrixProductState::from_product_state(l2))), 1.0, 1e-14);
}

TEST(Partition, BellPairHalvesAreNormalized) {
  const std::vector<int> cuts = {0};
  const auto parts = partition_at(bell_pair(), cuts);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_NEAR(parts[0].norm_squared(), 1.0, 1e-14);
  EXPECT_NEAR(parts[1].norm_squared(), 1.0, 1e-14);
}

TEST(Partition, DominantWeightIdentity) {
  StreamRng rng(10, 0);
  const auto m = MatrixProductState::random(8, 8, rng);
  for (int cut : {1, 3, 5}) {
    const std::vector<int> cuts = {cut};
    const auto parts = partition_at(m, cuts);
    // Tensor product of the halves as one chain.
    std::vector<MatrixProductState::SiteTensor> t = parts[0].tensors();
    for (const auto& s : parts[1].tensors()) t.push_back(s);
    const MatrixProductState joined(std::move(t));
    const double lmax = schmidt_spectrum(m, cut).lambdas[0];
    EXPECT_NEAR(std::norm(overlap(joined, m)), lmax * lmax, 1e-12);
  }
}

TEST(Partition, RejectsBadCuts) {
  const auto m = MatrixProductState::zero_state(5);
  const std::vector<int> dup = {2, 2}, unsorted = {3, 1}, out = {4};
  EXPECT_THROW(partition_at(m, dup), InvalidArgument);
  EXPECT_THROW(partition_at(m, unsorted), InvalidArgument);
  EXPECT_THROW(partition_at(m, out), InvalidArgument);
}

TEST(ToStatevector, GuardAndRoundTrip) {
  EXPECT_THROW(to_statevector(MatrixProductState::zero_state(25)), GuardError);
  StreamRng rng(11, 0);
  auto m = MatrixProductState::zero_state(6);
  Statevector sv = Statevector::zero(6);
  for (int j = 0; j < 5; ++j) {
    const Mat4 u = haar_unitary(4, rng);
    m.apply_two_site_exact(u, j);
    const std::vector<int> s = {j, j + 1};
    sv_apply_inplace(sv, u, s);
  }
  EXPECT_GE(testing::fidelity(to_statevector(m), sv), 1.0 - 1e-12);
}

}  // namespace
}  // namespace ack
