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
#include <optional>
#include <span>
#include <vector>

#include "ack/linalg.hpp"
#include "ack/pauli.hpp"
#include "ack/statevector.hpp"

namespace ack {

class StreamRng;

struct Truncation {
  int chi_max = 1 << 20;
  /// Largest discarded fraction of the squared norm per bond.
  double trunc_tol = 1e-12;
};

/// Open-boundary MPS. Site tensor i is stored as two matrices A_i[s]
/// of shape (left bond) x (right bond), s the physical index.
class MatrixProductState {
 public:
  using SiteTensor = std::array<ComplexMatrix, 2>;

  MatrixProductState() = default;
  /// Validates bond shapes; the state is assumed normalized unless told.
  /// A claimed orthogonality center is checked against the isometry
  /// conditions of every other site to 1e-10.
  explicit MatrixProductState(std::vector<SiteTensor> tensors, bool normalized = true,
                              std::optional<int> center = std::nullopt);

  static MatrixProductState zero_state(int n_sites);
  /// Tensor product of normalized single-site vectors (bond dimension 1).
  static MatrixProductState from_product_state(std::span<const Eigen::Vector2cd> locals);
  /// Random normalized state with bond dimensions capped at chi.
  static MatrixProductState random(int n_sites, int chi, StreamRng& rng);

  int n_sites() const { return static_cast<int>(tensors_.size()); }
  /// Dimension of the bond between sites b and b + 1.
  int bond_dim(int b) const { return static_cast<int>(tensors_.at(b)[0].cols()); }
  int max_bond_dim() const;
  const SiteTensor& site(int i) const { return tensors_.at(i); }
  const std::vector<SiteTensor>& tensors() const { return tensors_; }
  std::optional<int> ortho_center() const { return center_; }
  bool normalized() const { return normalized_; }

  Truncation truncation;  // defaults used by callers that do not pass one

  /// Gauge-fixes so that sites left (right) of center are left (right)
  /// isometries. The represented state does not change.
  void canonicalize(int center);

  /// Applies a 4x4 operator to (left_site, left_site + 1) and SVD-truncates
  /// the bond. Returns the discarded fraction of the squared norm.
  /// Normalized states are renormalized after truncation; a non-unitary
  /// operator marks the state unnormalized.
  double apply_two_site(const Mat4& gate, int left_site, const Truncation& trunc);
  double apply_two_site(const Mat4& gate, int left_site) {
    return apply_two_site(gate, left_site, truncation);
  }
  /// Exact application: only numerically zero singular values are dropped.
  void apply_two_site_exact(const Mat4& gate, int left_site);
  /// Exact application that touches only the two site tensors (no gauge
  /// sweep); the orthogonality center is forgotten.
  void apply_two_site_local(const Mat4& gate, int left_site);
  void apply_single_site(const Mat2& op, int site);

  double norm_squared() const;
  void normalize();

  /// Truncates the bond to its dominant Schmidt component and splits the
  /// chain there. Both halves are renormalized.
  std::pair<MatrixProductState, MatrixProductState> split_dominant(int bond) const;

 private:
  void left_orthogonalize_site(int i);
  void right_orthogonalize_site(int i);

  std::vector<SiteTensor> tensors_;
  std::optional<int> center_;
  bool normalized_ = true;
};

/// Schmidt values across one bond.
struct BondSpectrum {
  int bond_index = 0;
  std::vector<double> lambdas;  // positive, non-increasing
};

/// Values below this are dropped from spectra before entropies are taken.
inline constexpr double kSchmidtFloor = 1e-14;

MatrixProductState canonicalized(MatrixProductState mps, int center);

BondSpectrum schmidt_spectrum(const MatrixProductState& mps, int bond);
/// Every bond's spectrum in one sweep.
std::vector<BondSpectrum> all_spectra(const MatrixProductState& mps);

/// Validates a spectrum built by hand (positive, non-increasing, unit weight).
BondSpectrum make_spectrum(std::vector<double> lambdas, int bond_index = 0);

/// -sum lambda^2 ln lambda^2, in nats.
double entanglement_entropy(const BondSpectrum& spec);
/// (1 / (1 - alpha)) ln sum (lambda^2)^alpha, alpha > 0 and != 1.
double renyi_entropy(const BondSpectrum& spec, double alpha);
/// Pure-state knitting overhead 2 (sum lambda)^2 - 1.
double state_gamma(const BondSpectrum& spec);

/// Von Neumann entropy at every bond (length N - 1).
std::vector<double> entropy_heatmap(const MatrixProductState& mps);

/// Sum of coeff * <psi|P|psi>, not renormalized.
double expectation_local(const MatrixProductState& mps, const PauliTermList& terms);
cplx expectation_pauli(const MatrixProductState& mps, const PauliString& p);

/// <a|b>.
cplx overlap(const MatrixProductState& a, const MatrixProductState& b);

/// Splits at the given bonds (strictly increasing) keeping the dominant
/// Schmidt vector at each; every partition is renormalized.
std::vector<MatrixProductState> partition_at(const MatrixProductState& mps,
                                             std::span<const int> cuts);

/// Full contraction; N <= 24.
Statevector to_statevector(const MatrixProductState& mps);

}  // namespace ack
