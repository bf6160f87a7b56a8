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
#include <optional>
#include <span>
#include <vector>

#include "ack/linalg.hpp"
#include "ack/mps.hpp"

namespace ack {

struct CircuitGate {
  int layer = 0;
  int site = 0;  // acts on (site, site + 1)
  Mat4 unitary = Mat4::Identity();
};

/// Order-M staircase on n qubits. Gates are stored and applied
/// layer-major with ascending bonds: index = layer * (n - 1) + site.
struct StaircaseCircuit {
  int n_qubits = 0;
  int order_M = 0;
  std::vector<CircuitGate> gates;

  int n_bonds() const { return n_qubits - 1; }
  const Mat4& gate(int layer, int site) const { return gates.at(layer * n_bonds() + site).unitary; }
  Mat4& gate(int layer, int site) { return gates.at(layer * n_bonds() + site).unitary; }
};

/// Throws InvalidArgument on layout errors, non-unitary gates included.
void validate(const StaircaseCircuit& circ);

enum class CircuitInit { identity, seeded_random, perturbed_identity };

StaircaseCircuit init_circuit(int n_qubits, int order_M, CircuitInit init = CircuitInit::perturbed_identity,
                              std::uint64_t seed = 0, double perturbation = 1e-2);

/// Layer-by-layer analytic guess: truncate the remaining target to bond
/// dimension 2, read off the staircase layer that prepares it, undo that
/// layer and repeat.
StaircaseCircuit circuit_from_target(const MatrixProductState& target, int order_M);

/// Applies the circuit to |0...0>. Uncapped application is exact.
MatrixProductState circuit_to_mps(const StaircaseCircuit& circ,
                                  std::optional<Truncation> cap = std::nullopt);

double fidelity(const StaircaseCircuit& circ, const MatrixProductState& target);

struct CompressionReport {
  std::vector<double> fidelity_trace;  // entry 0 is the starting fidelity
  double final_fidelity = 0.0;
  int sweeps_used = 0;
  bool converged = false;
};

struct OptimizeOptions {
  int max_sweeps = 200;
  double rel_tol = 1e-9;
  std::vector<int> frozen_bonds;  // gates on these bonds are kept as given
};

/// Sweeps the gates in application order, replacing each by the polar
/// factor of its overlap environment.
std::pair<StaircaseCircuit, CompressionReport> optimize(StaircaseCircuit circ,
                                                        const MatrixProductState& target,
                                                        const OptimizeOptions& opts = {});

struct CompressOptions {
  int n_starts = 16;
  int screen_sweeps = 300;
  int n_polish = 4;
  OptimizeOptions polish{3000, 1e-12, {}};
  std::uint64_t seed = 0;
  int lanes = 1;
};

/// Multi-start optimize: start 0 is circuit_from_target, the rest alternate
/// perturbed-identity and seeded-random circuits. Every start runs
/// screen_sweeps; the n_polish best continue under `polish` and the best
/// result is returned. The report traces the winning start.
std::pair<StaircaseCircuit, CompressionReport> compress(const MatrixProductState& target, int order_M,
                                                        const CompressOptions& opts = {});

/// Gates of sites [lo, hi] as a standalone circuit (bonds lo .. hi - 1).
StaircaseCircuit slice_circuit(const StaircaseCircuit& full, int lo, int hi);

/// Partition p spans the sites between consecutive cuts. Gates on cut
/// bond k come from boundary_gates[k], one per layer.
StaircaseCircuit assemble_full_circuit(std::span<const StaircaseCircuit> partitions,
                                       const std::vector<std::vector<Mat4>>& boundary_gates,
                                       std::span<const int> cuts);

}  // namespace ack
