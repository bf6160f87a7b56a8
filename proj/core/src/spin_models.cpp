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
#include "ack/spin_models.hpp"

#include <algorithm>
#include <cmath>

#include "ack/error.hpp"
#include "ack/rng.hpp"

namespace ack {

LatticeGeometry LatticeGeometry::chain(int n) {
  ACK_REQUIRE(n >= 1, "chain needs at least one site");
  LatticeGeometry g;
  g.kind = LatticeKind::chain;
  g.n_sites = n;
  g.rows = 1;
  g.cols = n;
  for (int j = 0; j + 1 < n; ++j) g.edges.emplace_back(j, j + 1);
  return g;
}

LatticeGeometry LatticeGeometry::grid(int rows, int cols) {
  ACK_REQUIRE(rows >= 1 && cols >= 1, "grid dimensions must be positive");
  LatticeGeometry g;
  g.kind = LatticeKind::grid;
  g.n_sites = rows * cols;
  g.rows = rows;
  g.cols = cols;
  auto add = [&](int a, int b) { g.edges.emplace_back(std::min(a, b), std::max(a, b)); };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int s = snake_index(r, c, cols);
      if (c + 1 < cols) add(s, snake_index(r, c + 1, cols));
      if (r + 1 < rows) add(s, snake_index(r + 1, c, cols));
    }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<int> LatticeGeometry::neighbors(int site) const {
  ACK_REQUIRE(site >= 0 && site < n_sites, "site out of range");
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == site) out.push_back(b);
    if (b == site) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int LatticeGeometry::degree(int site) const { return static_cast<int>(neighbors(site).size()); }

int snake_index(int row, int col, int cols) {
  ACK_REQUIRE(cols >= 1 && row >= 0 && col >= 0 && col < cols, "grid coordinate out of range");
  return row % 2 == 0 ? row * cols + col : row * cols + cols - 1 - col;
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::clean: return "clean";
    case FamilyKind::longitudinal_disorder: return "longitudinal_disorder";
    case FamilyKind::fully_disordered: return "fully_disordered";
  }
  return "unknown";
}

FamilyKind parse_family(std::string_view name) {
  if (name == "clean") return FamilyKind::clean;
  if (name == "longitudinal_disorder") return FamilyKind::longitudinal_disorder;
  if (name == "fully_disordered") return FamilyKind::fully_disordered;
  throw InvalidArgument("unknown disorder family '" + std::string(name) + "'");
}

double DisorderInstance::coupling(int a, int b) const {
  const std::pair<int, int> e{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(geometry.edges.begin(), geometry.edges.end(), e);
  ACK_REQUIRE(it != geometry.edges.end() && *it == e, "no such edge");
  return couplings[it - geometry.edges.begin()];
}

DisorderInstance sample_disorder(const LatticeGeometry& geometry, const DisorderFamily& family,
                                 std::uint64_t seed) {
  ACK_REQUIRE(geometry.n_sites >= 1, "empty geometry");
  DisorderInstance inst;
  inst.geometry = geometry;
  inst.family = family;
  inst.seed = seed;
  const CounterRng rj(seed, 1), rg(seed, 2), rh(seed, 3);
  const std::size_t n = geometry.n_sites, m = geometry.edges.size();
  inst.couplings.assign(m, 1.0);
  inst.transverse.assign(n, family.g);
  inst.longitudinal.assign(n, family.h);
  switch (family.kind) {
    case FamilyKind::clean:
      break;
    case FamilyKind::longitudinal_disorder:
      ACK_REQUIRE(family.W >= 0.0 && std::isfinite(family.W), "disorder strength must be >= 0");
      for (std::size_t j = 0; j < n; ++j) inst.longitudinal[j] = rh.uniform(j, -family.W, family.W);
      break;
    case FamilyKind::fully_disordered:
      for (std::size_t e = 0; e < m; ++e) inst.couplings[e] = rj.uniform(e, -1.0, 1.0);
      for (std::size_t j = 0; j < n; ++j) inst.transverse[j] = rg.uniform(j, -1.0, 1.0);
      for (std::size_t j = 0; j < n; ++j) inst.longitudinal[j] = rh.uniform(j, -1.0, 1.0);
      break;
    default:
      throw InvalidArgument("unknown disorder family");
  }
  return inst;
}

void validate(const DisorderInstance& inst) {
  const auto& g = inst.geometry;
  ACK_REQUIRE(g.n_sites >= 1, "empty geometry");
  ACK_REQUIRE(inst.couplings.size() == g.edges.size(), "one coupling per edge required");
  ACK_REQUIRE(inst.transverse.size() == static_cast<std::size_t>(g.n_sites) &&
                  inst.longitudinal.size() == static_cast<std::size_t>(g.n_sites),
              "one field value per site required");
  ACK_REQUIRE(std::is_sorted(g.edges.begin(), g.edges.end()), "edges must be sorted");
  for (const auto& [a, b] : g.edges)
    ACK_REQUIRE(a >= 0 && a < b && b < g.n_sites, "edge out of range");
  auto all_in = [](const std::vector<double>& v, double lo, double hi) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x >= lo && x <= hi; });
  };
  switch (inst.family.kind) {
    case FamilyKind::clean:
      ACK_REQUIRE(all_in(inst.couplings, 1.0, 1.0), "clean family needs J = 1");
      ACK_REQUIRE(all_in(inst.transverse, inst.family.g, inst.family.g) &&
                      all_in(inst.longitudinal, inst.family.h, inst.family.h),
                  "clean family needs uniform fields");
      break;
    case FamilyKind::longitudinal_disorder:
      ACK_REQUIRE(all_in(inst.couplings, 1.0, 1.0), "longitudinal family needs J = 1");
      ACK_REQUIRE(all_in(inst.longitudinal, -inst.family.W, inst.family.W), "h outside [-W, W]");
      break;
    case FamilyKind::fully_disordered:
      ACK_REQUIRE(all_in(inst.couplings, -1, 1) && all_in(inst.transverse, -1, 1) &&
                      all_in(inst.longitudinal, -1, 1),
                  "fully disordered parameters outside [-1, 1]");
      break;
  }
}

PauliTermList hamiltonian_terms(const DisorderInstance& inst) {
  PauliTermList terms;
  const auto& edges = inst.geometry.edges;
  for (std::size_t e = 0; e < edges.size(); ++e)
    terms.push_back({-inst.couplings[e], PauliString({{edges[e].first, 'X'}, {edges[e].second, 'X'}})});
  for (int j = 0; j < inst.geometry.n_sites; ++j)
    terms.push_back({-inst.transverse[j], PauliString({{j, 'Z'}})});
  for (int j = 0; j < inst.geometry.n_sites; ++j)
    terms.push_back({-inst.longitudinal[j], PauliString({{j, 'X'}})});
  return terms;
}

PauliTermList energy_density_observable(const DisorderInstance& inst, int site) {
  const auto nb = inst.geometry.neighbors(site);
  PauliTermList terms = {{-inst.transverse[site], PauliString({{site, 'Z'}})},
                         {-inst.longitudinal[site], PauliString({{site, 'X'}})}};
  for (int k : nb)
    terms.push_back({-inst.coupling(site, k) / static_cast<double>(nb.size()),
                     PauliString({{site, 'X'}, {k, 'X'}})});
  return terms;
}

std::vector<Eigen::Vector2cd> bump_state(const DisorderInstance& inst, int center) {
  const int n = inst.geometry.n_sites;
  ACK_REQUIRE(center >= 0 && center < n, "bump center out of range");
  std::vector<Eigen::Vector2cd> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double g = inst.transverse[j], h = inst.longitudinal[j];
    ACK_REQUIRE(g != 0.0 || h != 0.0, "field direction undefined at site " + std::to_string(j));
    const double half = 0.5 * std::atan2(h, g);
    if (j == center)
      out.emplace_back(-std::sin(half), std::cos(half));
    else
      out.emplace_back(std::cos(half), std::sin(half));
  }
  return out;
}

double total_energy(const MatrixProductState& mps, const DisorderInstance& inst) {
  ACK_REQUIRE(mps.n_sites() == inst.geometry.n_sites, "state and instance sizes differ");
  return expectation_local(mps, hamiltonian_terms(inst));
}

}  // namespace ack
