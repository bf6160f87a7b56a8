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

#include <string>
#include <utility>
#include <vector>

#include "ack/linalg.hpp"
#include "ack/mps.hpp"
#include "ack/spin_models.hpp"

namespace ack {

/// One Trotter factor exp(-i dt_eff h_edge) on edge (site_a, site_b).
/// When the sites are not adjacent, swap_prefix lists the bonds of the
/// adjacent transpositions that bring site_b next to site_a; the gate then
/// acts on (site_a, site_a + 1) and the prefix is undone in reverse.
struct TrotterEntry {
  int site_a = 0;
  int site_b = 1;
  double dt_eff = 0.0;
  Mat4 unitary = Mat4::Identity();
  std::vector<int> swap_prefix;
};

struct TrotterPlan {
  int n_sites = 0;
  double dt = 0.0;
  int order = 2;
  /// Entries of one time step, in application order. For order 2 the
  /// outer groups appear twice with dt/2 each.
  std::vector<TrotterEntry> entries;
  /// Site-disjoint edge groups used to build the entries.
  std::vector<std::vector<std::pair<int, int>>> groups;
};

/// Two-site bundle -J X_a X_b plus each site's fields weighted by 1/degree.
Mat4 edge_hamiltonian(const DisorderInstance& inst, int a, int b);

TrotterPlan trotter_plan(const DisorderInstance& inst, double dt, int order = 2);

/// Adjacent (left_site, gate) list of one step with swap networks expanded.
std::vector<std::pair<int, Mat4>> expand_step(const TrotterPlan& plan);

struct RecordOptions {
  bool heatmaps = true;
  /// Record every this many steps (the initial state is always recorded).
  int every = 1;
  /// Named observables evaluated at each recorded time.
  std::vector<std::pair<std::string, PauliTermList>> observables;
  /// Step indices at which a copy of the state is kept.
  std::vector<int> snapshot_steps;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::pair<double, MatrixProductState>> snapshots;
  std::vector<std::vector<double>> heatmaps;
  std::vector<std::string> observable_names;
  std::vector<std::vector<double>> observables;  // [time][observable]
  double discarded_weight_total = 0.0;
  MatrixProductState final_state;
};

Trajectory evolve(const MatrixProductState& initial, const TrotterPlan& plan, int n_steps,
                  const Truncation& trunc, const RecordOptions& record = {});

}  // namespace ack
