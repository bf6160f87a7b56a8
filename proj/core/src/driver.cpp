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
#include "ack/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "ack/error.hpp"
#include "ack/parallel.hpp"
#include "ack/tebd.hpp"

namespace ack {
namespace {

constexpr double kTieTol = 1e-12;
constexpr double kExhaustiveLimit = 1e5;

MatrixProductState capped(const MatrixProductState& target, int chi_max) {
  ACK_REQUIRE(target.normalized(), "target must be normalized");
  if (target.max_bond_dim() <= chi_max) return target;
  MatrixProductState t = canonicalized(target, 0);
  for (int j = 0; j + 1 < t.n_sites(); ++j) t.apply_two_site(Mat4::Identity(), j, Truncation{chi_max, 0.0});
  return t;
}

std::vector<std::pair<int, int>> ranges_of(std::span<const int> cuts, int n) {
  std::vector<std::pair<int, int>> out;
  int lo = 0;
  for (int c : cuts) {
    out.emplace_back(lo, c);
    lo = c + 1;
  }
  out.emplace_back(lo, n - 1);
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int distance(std::span<const int> a, std::span<const int> b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// Strictly better total entropy, or equal and closer to the reference,
// or equal on both and lexicographically smaller.
bool better(double s, std::span<const int> k, double best_s, std::span<const int> best_k,
            std::span<const int> reference) {
  if (best_k.empty()) return true;
  if (s < best_s - kTieTol) return true;
  if (s > best_s + kTieTol) return false;
  const int d = distance(k, reference), bd = distance(best_k, reference);
  if (d != bd) return d < bd;
  return std::lexicographical_compare(k.begin(), k.end(), best_k.begin(), best_k.end());
}

struct AuxPass {
  std::vector<int> shifted;
  std::vector<StaircaseCircuit> circuits;
};

AuxPass aux_pass(const MatrixProductState& target, std::span<const int> cuts, const AckConfig& cfg) {
  const int n = target.n_sites();
  AuxPass aux;
  for (int sign : {+1, -1}) {
    aux.shifted.clear();
    for (int c : cuts) aux.shifted.push_back(c + sign * cfg.boundary_offset);
    if (admissible(aux.shifted, n, cfg)) break;
    aux.shifted.clear();
  }
  if (aux.shifted.empty()) throw InvalidArgument("no admissible shift of the cuts for boundary gates");
  evaluate_cuts(target, aux.shifted, cfg, &aux.circuits);
  return aux;
}

std::vector<std::vector<Mat4>> identity_boundaries(std::size_t n_cuts, int m) {
  return std::vector<std::vector<Mat4>>(n_cuts, std::vector<Mat4>(m, Mat4::Identity()));
}

// The auxiliary circuits, whose partitions contain the cut bonds, seed a
// joint optimization of the full staircase in which the cut-bond gates are
// held fixed. The partition circuits are read back from the result.
AckResult finish(const MatrixProductState& target, std::vector<int> cuts, std::vector<StaircaseCircuit> circuits,
                 const AckConfig& cfg) {
  AckResult r;
  r.final_cuts = std::move(cuts);
  if (r.final_cuts.empty()) {
    r.partition_circuits = std::move(circuits);
    r.full_circuit = r.partition_circuits.at(0);
  } else {
    const auto aux = aux_pass(target, r.final_cuts, cfg);
    const auto seed =
        assemble_full_circuit(aux.circuits, identity_boundaries(aux.shifted.size(), cfg.order_M), aux.shifted);
    OptimizeOptions opts = cfg.optimize;
    opts.frozen_bonds = r.final_cuts;
    r.full_circuit = optimize(seed, target, opts).first;
    for (const auto& [lo, hi] : ranges_of(r.final_cuts, target.n_sites()))
      r.partition_circuits.push_back(slice_circuit(r.full_circuit, lo, hi));
    for (int c : r.final_cuts) {
      std::vector<Mat4> gates;
      for (int l = 0; l < cfg.order_M; ++l) gates.push_back(r.full_circuit.gate(l, c));
      r.boundary_gates.push_back(std::move(gates));
    }
  }
  r.full_fidelity = fidelity(r.full_circuit, target);
  r.cut_plan = make_cut_plan(r.full_circuit, r.final_cuts);
  r.state_gamma = state_gamma_at(target, r.final_cuts);
  return r;
}

}  // namespace

void validate(const AckConfig& cfg) {
  const auto fail = [](const char* msg) { throw ConfigError(msg); };
  if (cfg.n_partitions < 1) fail("n_partitions must be at least 1");
  if (cfg.order_M < 1) fail("order_M must be at least 1");
  if (cfg.chi_max < 1) fail("chi_max must be at least 1");
  if (cfg.search_window < 0) fail("search_window must be non-negative");
  if (cfg.partition_floor() < cfg.order_M + 1) fail("min_partition_size must be at least order_M + 1");
  if (cfg.min_cut_gap < 1) fail("min_cut_gap must be at least 1");
  if (cfg.max_outer_iters < 1) fail("max_outer_iters must be at least 1");
  if (cfg.boundary_offset < 2) fail("boundary_offset must be at least 2");
  if (cfg.lanes < 1) fail("lanes must be at least 1");
  if (cfg.optimize.max_sweeps < 0) fail("max_sweeps must be non-negative");
}

std::vector<int> load_balanced_cuts(int n_sites, int n_partitions) {
  ACK_REQUIRE(n_partitions >= 1 && n_sites >= n_partitions, "cannot split the chain that many ways");
  std::vector<int> cuts;
  for (int k = 1; k < n_partitions; ++k)
    cuts.push_back(static_cast<int>(std::lround(static_cast<double>(k) * n_sites / n_partitions)) - 1);
  return cuts;
}

bool admissible(std::span<const int> cuts, int n_sites, const AckConfig& cfg) {
  const int floor = cfg.partition_floor();
  int prev = -1;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const int c = cuts[i];
    if (c < 0 || c > n_sites - 2) return false;
    if (c - prev < floor) return false;
    if (i > 0 && c - prev < cfg.min_cut_gap) return false;
    prev = c;
  }
  return n_sites - 1 - prev >= floor;
}

std::vector<int> update_cuts(const PartialHeatmap& heatmap, std::span<const int> cuts, const AckConfig& cfg) {
  const int n = static_cast<int>(heatmap.size()) + 1;
  const auto value = [&](int b) -> std::optional<double> {
    if (b < 0 || b >= n - 1) return std::nullopt;
    return heatmap[b];
  };
  std::vector<int> out(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int cur = out[i];
    double best_score = std::numeric_limits<double>::infinity();
    if (const auto v = value(cur)) {
      best_score = *v;
    } else {
      for (int nb : {cur - 1, cur + 1})
        if (const auto v2 = value(nb)) best_score = std::min(best_score, *v2);
    }
    int best = cur;
    for (int b = cur - cfg.search_window; b <= cur + cfg.search_window; ++b) {
      const auto v = value(b);
      if (!v || b == cur || !(*v < best_score)) continue;
      std::vector<int> trial = out;
      trial[i] = b;
      if (!admissible(trial, n, cfg)) continue;
      best = b;
      best_score = *v;
    }
    out[i] = best;
  }
  return out;
}

AckIteration evaluate_cuts(const MatrixProductState& target, std::span<const int> cuts, const AckConfig& cfg,
                           std::vector<StaircaseCircuit>* circuits) {
  const int n = target.n_sites();
  ACK_REQUIRE(admissible(cuts, n, cfg), "cuts violate the partition constraints");
  const auto parts = partition_at(target, cuts);
  std::vector<StaircaseCircuit> circs(parts.size());
  std::vector<double> fids(parts.size());
  parallel_for(parts.size(), cfg.lanes, [&](std::size_t p) {
    auto [c, rep] = optimize(circuit_from_target(parts[p], cfg.order_M), parts[p], cfg.optimize);
    circs[p] = std::move(c);
    fids[p] = rep.final_fidelity;
  });

  AckIteration it;
  it.cuts.assign(cuts.begin(), cuts.end());
  it.fidelities = std::move(fids);
  it.heatmap.assign(n - 1, std::nullopt);
  // Bonds inside a partition are read off the target's own spectra, which a
  // partition in mixed canonical form reproduces exactly. The truncated
  // partition states would understate every bond next to a cut.
  const auto full = entropy_heatmap(target);
  for (const auto& [lo, hi] : ranges_of(cuts, n))
    for (int b = lo; b < hi; ++b) it.heatmap[b] = full[b];
  if (circuits) *circuits = std::move(circs);
  return it;
}

std::vector<std::vector<Mat4>> boundary_gates(const MatrixProductState& target, std::span<const int> cuts,
                                              const AckConfig& cfg) {
  if (cuts.empty()) return {};
  const auto aux = aux_pass(target, cuts, cfg);
  const auto ranges = ranges_of(aux.shifted, target.n_sites());
  std::vector<std::vector<Mat4>> out;
  for (int c : cuts) {
    std::size_t q = 0;
    while (!(ranges[q].first <= c && c < ranges[q].second)) ++q;
    std::vector<Mat4> gates;
    for (int l = 0; l < cfg.order_M; ++l) gates.push_back(aux.circuits[q].gate(l, c - ranges[q].first));
    out.push_back(std::move(gates));
  }
  return out;
}

AckResult run_fixed_cuts(const MatrixProductState& target_in, std::span<const int> cuts, const AckConfig& cfg) {
  validate(cfg);
  const auto target = capped(target_in, cfg.chi_max);
  std::vector<StaircaseCircuit> circuits;
  auto it = evaluate_cuts(target, cuts, cfg, &circuits);
  auto r = finish(target, it.cuts, std::move(circuits), cfg);
  r.iterations.push_back(std::move(it));
  return r;
}

AckResult run_ack(const MatrixProductState& target_in, const AckConfig& cfg) {
  validate(cfg);
  const int n = target_in.n_sites();
  if (n < cfg.n_partitions * cfg.partition_floor())
    throw InvalidArgument("chain too short for n_partitions * min_partition_size");
  const auto target = capped(target_in, cfg.chi_max);
  std::vector<int> cuts = load_balanced_cuts(n, cfg.n_partitions);
  if (!admissible(cuts, n, cfg)) throw InvalidArgument("load-balanced cuts violate the constraints");

  std::map<std::vector<int>, std::vector<StaircaseCircuit>> seen;
  std::vector<AckIteration> iterations;
  PartialHeatmap merged(n - 1, std::nullopt);
  bool revisited = false;
  while (true) {
    std::vector<StaircaseCircuit> circuits;
    iterations.push_back(evaluate_cuts(target, cuts, cfg, &circuits));
    seen.emplace(cuts, std::move(circuits));
    for (int b = 0; b + 1 < n; ++b)
      if (iterations.back().heatmap[b]) merged[b] = iterations.back().heatmap[b];
    if (static_cast<int>(iterations.size()) >= cfg.max_outer_iters) break;
    auto next = update_cuts(merged, cuts, cfg);
    if (seen.count(next)) {
      revisited = true;
      cuts = std::move(next);
      break;
    }
    cuts = std::move(next);
  }
  auto r = finish(target, cuts, seen.at(cuts), cfg);
  r.iterations = std::move(iterations);
  r.revisited = revisited;
  return r;
}

double state_gamma_at(const MatrixProductState& target, std::span<const int> cuts) {
  double g = 1.0;
  for (int c : cuts) g *= state_gamma(schmidt_spectrum(target, c));
  return g;
}

std::vector<int> state_prep_cuts(const MatrixProductState& target, int n_partitions, const AckConfig& cfg) {
  const int n = target.n_sites();
  const int k = n_partitions - 1;
  ACK_REQUIRE(n_partitions >= 1, "n_partitions must be at least 1");
  if (k == 0) return {};
  const auto heat = entropy_heatmap(target);
  const auto reference = load_balanced_cuts(n, n_partitions);
  std::vector<int> best;
  double best_s = 0.0;

  if (binomial(n - 1, k) <= kExhaustiveLimit) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (admissible(idx, n, cfg)) {
        double s = 0.0;
        for (int b : idx) s += heat[b];
        if (better(s, idx, best_s, best, reference)) {
          best = idx;
          best_s = s;
        }
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == n - 2 - (k - 1 - i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    const int step = std::max(cfg.partition_floor(), cfg.min_cut_gap);
    int prev = -1;
    for (int i = 0; i < k; ++i) {
      const int remaining = k - 1 - i;
      int pick = -1;
      for (int b = prev + 1; b <= n - 2; ++b) {
        if (b - prev < cfg.partition_floor() || (i > 0 && b - prev < cfg.min_cut_gap)) continue;
        if (n - 1 - b < remaining * step + cfg.partition_floor()) continue;
        const std::array<int, 1> kb{b}, kp{pick};
        const std::array<int, 1> ref{reference[i]};
        if (pick < 0 || better(heat[b], kb, heat[pick], kp, ref)) pick = b;
      }
      ACK_REQUIRE(pick >= 0, "no admissible cut placement");
      best.push_back(pick);
      prev = pick;
    }
  }
  ACK_REQUIRE(!best.empty(), "no admissible cut placement");
  return best;
}

std::vector<MatrixProductState> bump_ensemble(const EnsembleSpec& spec, int lanes) {
  ACK_REQUIRE(spec.dt > 0 && spec.t_final >= 0, "invalid evolution times");
  const int steps = static_cast<int>(std::lround(spec.t_final / spec.dt));
  const auto& g = spec.geometry;
  const int center = g.rows > 0 && g.cols > 0 && g.rows * g.cols == g.n_sites
                         ? snake_index(g.rows / 2, g.cols / 2, g.cols)
                         : g.n_sites / 2;
  std::vector<MatrixProductState> out(spec.seeds.size());
  parallel_for(out.size(), lanes, [&](std::size_t i) {
    const auto inst = sample_disorder(g, spec.family, spec.seeds[i]);
    const auto locals = bump_state(inst, center);
    const auto initial = MatrixProductState::from_product_state(locals);
    RecordOptions rec;
    rec.heatmaps = false;
    rec.every = std::max(steps, 1);
    out[i] = evolve(initial, trotter_plan(inst, spec.dt), steps, spec.truncation, rec).final_state;
  });
  return out;
}

double quantile(std::vector<double> values, double q) {
  ACK_REQUIRE(!values.empty(), "quantile of an empty set");
  ACK_REQUIRE(q >= 0.0 && q <= 1.0, "quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

StrategyComparison compare_strategies(std::span<const MatrixProductState> targets, const AckConfig& cfg,
                                      bool force_baseline) {
  validate(cfg);
  AckConfig inner = cfg;
  inner.lanes = 1;
  StrategyComparison out;
  out.rows.resize(targets.size());
  parallel_for(targets.size(), cfg.lanes, [&](std::size_t i) {
    const auto lb = load_balanced_cuts(targets[i].n_sites(), cfg.n_partitions);
    const auto base = run_fixed_cuts(targets[i], lb, inner);
    const auto adapt = force_baseline ? base : run_ack(targets[i], inner);
    StrategyRow& row = out.rows[i];
    row.baseline_cuts = base.final_cuts;
    row.adaptive_cuts = adapt.final_cuts;
    row.baseline_gamma = base.cut_plan.total_gamma;
    row.adaptive_gamma = adapt.cut_plan.total_gamma;
    row.baseline_state_gamma = base.state_gamma;
    row.adaptive_state_gamma = adapt.state_gamma;
    row.ratio = row.baseline_gamma / row.adaptive_gamma;
  });
  if (out.rows.empty()) return out;
  std::vector<double> ratios;
  int improved = 0, not_worse = 0;
  for (const auto& r : out.rows) {
    ratios.push_back(r.ratio);
    improved += r.adaptive_gamma < r.baseline_gamma;
    not_worse += r.adaptive_gamma <= r.baseline_gamma;
  }
  out.median_ratio = quantile(ratios, 0.5);
  out.p90_ratio = quantile(ratios, 0.9);
  out.fraction_improved = static_cast<double>(improved) / out.rows.size();
  out.fraction_not_worse = static_cast<double>(not_worse) / out.rows.size();
  return out;
}

}  // namespace ack
