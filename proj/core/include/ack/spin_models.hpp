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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ack/mps.hpp"
#include "ack/pauli.hpp"

namespace ack {

enum class LatticeKind { chain, grid };

struct LatticeGeometry {
  LatticeKind kind = LatticeKind::chain;
  int n_sites = 0;
  int rows = 1;
  int cols = 0;
  /// Pairs (a, b) with a < b in chain indexing, sorted.
  std::vector<std::pair<int, int>> edges;

  static LatticeGeometry chain(int n);
  /// rows x cols lattice embedded with snake_index.
  static LatticeGeometry grid(int rows, int cols);

  std::vector<int> neighbors(int site) const;
  int degree(int site) const;
};

/// Row-alternating embedding: even rows run left to right, odd rows right to left.
int snake_index(int row, int col, int cols);

enum class FamilyKind { clean, longitudinal_disorder, fully_disordered };

struct DisorderFamily {
  FamilyKind kind = FamilyKind::clean;
  double W = 2.0;   // longitudinal disorder strength
  double g = 1.01;  // transverse field for clean and longitudinal families
  double h = 1.0;   // longitudinal field for the clean family

  static DisorderFamily clean() { return {}; }
  static DisorderFamily longitudinal(double W = 2.0) {
    return {FamilyKind::longitudinal_disorder, W};
  }
  static DisorderFamily fully_disordered() { return {FamilyKind::fully_disordered}; }
};

std::string family_name(FamilyKind kind);
/// Throws InvalidArgument for unknown names.
FamilyKind parse_family(std::string_view name);

struct DisorderInstance {
  LatticeGeometry geometry;
  DisorderFamily family;
  std::uint64_t seed = 0;
  std::vector<double> couplings;   // one per geometry edge, same order
  std::vector<double> transverse;  // g_j
  std::vector<double> longitudinal;  // h_j

  double coupling(int a, int b) const;
};

/// Counter-based draws: stream 1 for J, 2 for g, 3 for h, counter = edge or site index.
DisorderInstance sample_disorder(const LatticeGeometry& geometry, const DisorderFamily& family,
                                 std::uint64_t seed);

/// Throws InvalidArgument when sizes or family ranges are violated.
void validate(const DisorderInstance& inst);

PauliTermList hamiltonian_terms(const DisorderInstance& inst);
PauliTermList energy_density_observable(const DisorderInstance& inst, int site);

/// Spins along g_j z + h_j x, except the center which is flipped.
std::vector<Eigen::Vector2cd> bump_state(const DisorderInstance& inst, int center);

double total_energy(const MatrixProductState& mps, const DisorderInstance& inst);

}  // namespace ack
