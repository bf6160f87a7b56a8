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
#include "ack/tebd.hpp"

#include <algorithm>
#include <cmath>

#include "ack/error.hpp"

namespace ack {
namespace {

Mat4 expm_step(const Mat4& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(h);
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::exp(cplx(0.0, -dt * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Greedy colouring of the sorted edge list into site-disjoint groups.
std::vector<std::vector<std::pair<int, int>>> disjoint_groups(const LatticeGeometry& geo) {
  std::vector<std::vector<std::pair<int, int>>> groups;
  std::vector<std::vector<char>> used;
  for (const auto& e : geo.edges) {
    std::size_t g = 0;
    while (g < groups.size() && (used[g][e.first] || used[g][e.second])) ++g;
    if (g == groups.size()) {
      groups.emplace_back();
      used.emplace_back(geo.n_sites, 0);
    }
    groups[g].push_back(e);
    used[g][e.first] = used[g][e.second] = 1;
  }
  return groups;
}

}  // namespace

Mat4 edge_hamiltonian(const DisorderInstance& inst, int a, int b) {
  const Mat2 x = pauli('X'), z = pauli('Z'), id = Mat2::Identity();
  const double wa = 1.0 / inst.geometry.degree(a), wb = 1.0 / inst.geometry.degree(b);
  const Mat2 fa = -wa * (inst.transverse[a] * z + inst.longitudinal[a] * x);
  const Mat2 fb = -wb * (inst.transverse[b] * z + inst.longitudinal[b] * x);
  return -inst.coupling(a, b) * kron(x, x) + kron(fa, id) + kron(id, fb);
}

TrotterPlan trotter_plan(const DisorderInstance& inst, double dt, int order) {
  ACK_REQUIRE(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  ACK_REQUIRE(order == 1 || order == 2, "Trotter order must be 1 or 2");
  ACK_REQUIRE(inst.geometry.n_sites >= 2, "evolution needs at least two sites");
  for (int j = 0; j < inst.geometry.n_sites; ++j)
    ACK_REQUIRE(inst.geometry.degree(j) > 0, "isolated site " + std::to_string(j));

  TrotterPlan plan;
  plan.n_sites = inst.geometry.n_sites;
  plan.dt = dt;
  plan.order = order;
  plan.groups = disjoint_groups(inst.geometry);

  auto push_group = [&](const std::vector<std::pair<int, int>>& group, double step) {
    for (const auto& [a, b] : group) {
      TrotterEntry e;
      e.site_a = a;
      e.site_b = b;
      e.dt_eff = step;
      e.unitary = expm_step(edge_hamiltonian(inst, a, b), step);
      for (int s = b - 1; s > a; --s) e.swap_prefix.push_back(s);
      plan.entries.push_back(std::move(e));
    }
  };

  const std::size_t k = plan.groups.size();
  if (order == 1) {
    for (const auto& g : plan.groups) push_group(g, dt);
  } else {
    for (std::size_t i = 0; i + 1 < k; ++i) push_group(plan.groups[i], dt / 2);
    push_group(plan.groups[k - 1], dt);
    for (std::size_t i = k - 1; i-- > 0;) push_group(plan.groups[i], dt / 2);
  }
  return plan;
}

std::vector<std::pair<int, Mat4>> expand_step(const TrotterPlan& plan) {
  std::vector<std::pair<int, Mat4>> out;
  const Mat4 sw = gates::swap();
  for (const auto& e : plan.entries) {
    for (int s : e.swap_prefix) out.emplace_back(s, sw);
    out.emplace_back(e.site_a, e.unitary);
    for (auto it = e.swap_prefix.rbegin(); it != e.swap_prefix.rend(); ++it) out.emplace_back(*it, sw);
  }
  return out;
}

Trajectory evolve(const MatrixProductState& initial, const TrotterPlan& plan, int n_steps,
                  const Truncation& trunc, const RecordOptions& record) {
  ACK_REQUIRE(trunc.chi_max >= 1, "chi_max must be at least 1");
  ACK_REQUIRE(n_steps >= 0, "n_steps must be non-negative");
  ACK_REQUIRE(record.every >= 1, "record interval must be positive");
  ACK_REQUIRE(initial.normalized(), "evolution needs a normalized state");
  ACK_REQUIRE(initial.n_sites() == plan.n_sites, "state and plan sizes differ");

  Trajectory traj;
  for (const auto& [name, terms] : record.observables) traj.observable_names.push_back(name);
  MatrixProductState state = initial;
  const auto gates = expand_step(plan);

  auto snapshot = [&](int step) {
    const double t = step * plan.dt;
    if (std::find(record.snapshot_steps.begin(), record.snapshot_steps.end(), step) !=
        record.snapshot_steps.end())
      traj.snapshots.emplace_back(t, state);
    if (step % record.every != 0 && step != n_steps) return;
    traj.times.push_back(t);
    if (record.heatmaps) traj.heatmaps.push_back(entropy_heatmap(state));
    std::vector<double> values;
    for (const auto& [name, terms] : record.observables) values.push_back(expectation_local(state, terms));
    traj.observables.push_back(std::move(values));
  };

  snapshot(0);
  for (int step = 1; step <= n_steps; ++step) {
    for (const auto& [site, gate] : gates) traj.discarded_weight_total += state.apply_two_site(gate, site, trunc);
    snapshot(step);
  }
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace ack
