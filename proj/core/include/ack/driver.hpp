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

#include "ack/circuit.hpp"
#include "ack/mps.hpp"
#include "ack/qpd.hpp"
#include "ack/spin_models.hpp"

namespace ack {

struct AckConfig {
  int n_partitions = 2;
  int order_M = 3;
  int chi_max = 256;  // cap applied to the target before partitioning
  int search_window = 5;
  int min_partition_size = 0;  // 0 selects order_M + 2
  int min_cut_gap = 4;
  int max_outer_iters = 10;
  int boundary_offset = 2;
  OptimizeOptions optimize{};
  int lanes = 1;

  int partition_floor() const { return min_partition_size > 0 ? min_partition_size : order_M + 2; }
};

/// Throws ConfigError on values outside the documented ranges.
void validate(const AckConfig& cfg);

/// Entropy per bond; bonds without a measurement hold nullopt.
using PartialHeatmap = std::vector<std::optional<double>>;

struct AckIteration {
  std::vector<int> cuts;
  PartialHeatmap heatmap;
  std::vector<double> fidelities;  // per partition
};

struct AckResult {
  std::vector<int> final_cuts;
  std::vector<AckIteration> iterations;
  bool revisited = false;  // stopped because the next cuts were already seen
  std::vector<StaircaseCircuit> partition_circuits;
  std::vector<std::vector<Mat4>> boundary_gates;
  StaircaseCircuit full_circuit;
  double full_fidelity = 0.0;
  CutPlan cut_plan;
  double state_gamma = 1.0;  // product over the final cut bonds
};

/// Equal-size partitions; cut k sits after site round((k + 1) N / p) - 1.
std::vector<int> load_balanced_cuts(int n_sites, int n_partitions);

/// Size and gap constraints for sorted cuts on an n-site chain.
bool admissible(std::span<const int> cuts, int n_sites, const AckConfig& cfg);

/// Moves each cut, left to right, to the lowest measured bond within the
/// search window that keeps the cuts admissible. The current cut scores as
/// the lower of its two neighbouring bonds and is kept unless a candidate
/// is strictly lower; ties go to the smallest bond index.
std::vector<int> update_cuts(const PartialHeatmap& heatmap, std::span<const int> cuts, const AckConfig& cfg);

/// Partitions and compresses at the given cuts. The heatmap holds the
/// target's bond entropies inside partitions and nothing at cut bonds.
AckIteration evaluate_cuts(const MatrixProductState& target, std::span<const int> cuts, const AckConfig& cfg,
                           std::vector<StaircaseCircuit>* circuits = nullptr);

/// Gates for each cut bond from an auxiliary pass with every cut shifted by
/// boundary_offset (right when admissible, otherwise left).
std::vector<std::vector<Mat4>> boundary_gates(const MatrixProductState& target, std::span<const int> cuts,
                                              const AckConfig& cfg);

/// Full pipeline at fixed cuts: compress partitions, then optimize the full
/// staircase seeded by the auxiliary pass with the cut-bond gates held at
/// their boundary_gates values, then build the plan.
AckResult run_fixed_cuts(const MatrixProductState& target, std::span<const int> cuts, const AckConfig& cfg);

/// Adaptive loop until the cut set repeats or max_outer_iters is reached.
AckResult run_ack(const MatrixProductState& target, const AckConfig& cfg);

/// Admissible p - 1 bonds of minimal total entropy from the full heatmap.
/// Exhaustive when the number of combinations is at most 1e5, greedy
/// otherwise. Ties prefer cuts closest to load balance, then smaller bonds.
std::vector<int> state_prep_cuts(const MatrixProductState& target, int n_partitions, const AckConfig& cfg);

/// Product of state_gamma over the listed bonds.
double state_gamma_at(const MatrixProductState& target, std::span<const int> cuts);

struct EnsembleSpec {
  LatticeGeometry geometry;
  DisorderFamily family;
  std::vector<std::uint64_t> seeds;
  double t_final = 3.5;
  double dt = 0.25;
  Truncation truncation{64, 1e-10};
};

/// TEBD-evolved bump states, one per seed.
std::vector<MatrixProductState> bump_ensemble(const EnsembleSpec& spec, int lanes = 1);

struct StrategyRow {
  std::vector<int> adaptive_cuts;
  std::vector<int> baseline_cuts;
  double adaptive_gamma = 1.0;
  double baseline_gamma = 1.0;
  double adaptive_state_gamma = 1.0;
  double baseline_state_gamma = 1.0;
  double ratio = 1.0;  // baseline_gamma / adaptive_gamma
};

struct StrategyComparison {
  std::vector<StrategyRow> rows;
  double median_ratio = 1.0;
  double p90_ratio = 1.0;
  double fraction_improved = 0.0;   // adaptive strictly lower
  double fraction_not_worse = 0.0;  // adaptive lower or equal
};

/// Adaptive against load-balanced cuts on each target. Passing
/// force_baseline runs the baseline cuts through both arms.
StrategyComparison compare_strategies(std::span<const MatrixProductState> targets, const AckConfig& cfg,
                                      bool force_baseline = false);

/// Linear-interpolated quantile of unsorted values, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace ack
