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
#include "ack/executor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ack/error.hpp"
#include "ack/parallel.hpp"
#include "ack/rng.hpp"

namespace ack {
namespace {

constexpr std::uint64_t kJitterStream = 0x6a17;

// Longest-first onto the earliest-finishing worker of the given pool.
void lpt_into(std::span<const TaskSpec> tasks, const std::vector<std::size_t>& picked,
              std::span<const WorkerModel> workers, const std::vector<std::size_t>& pool, ScheduleTrace& out) {
  if (picked.empty()) return;
  if (pool.empty()) throw InvalidArgument("tasks were routed to a worker class with no workers");
  const auto& ref = workers[pool.front()];
  std::vector<std::size_t> order = picked;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ca = ref.cost(tasks[a].width, tasks[a].id), cb = ref.cost(tasks[b].width, tasks[b].id);
    if (ca != cb) return ca > cb;
    return tasks[a].id < tasks[b].id;
  });
  std::vector<double> avail(workers.size(), 0.0);
  for (std::size_t t : order) {
    std::size_t best = pool.front();
    double best_end = std::numeric_limits<double>::infinity();
    for (std::size_t w : pool) {
      const double end = avail[w] + workers[w].cost(tasks[t].width, tasks[t].id);
      if (end < best_end) {
        best_end = end;
        best = w;
      }
    }
    out[t] = {tasks[t].id, tasks[t].width, workers[best].id, avail[best], best_end};
    avail[best] = best_end;
  }
}

}  // namespace

double WorkerModel::cost(int width, std::uint64_t task_id) const {
  double c = alpha + beta * width * std::ldexp(1.0, width);
  if (jitter > 0.0) {
    const CounterRng rng(task_id, kJitterStream + static_cast<std::uint64_t>(id));
    c *= 1.0 + jitter * (2.0 * rng.uniform(0) - 1.0);
  }
  return c;
}

std::vector<WorkerModel> default_workers(int n_big, int n_small) {
  ACK_REQUIRE(n_big >= 0 && n_small >= 0 && n_big + n_small > 0, "need at least one worker");
  std::vector<WorkerModel> out;
  for (int i = 0; i < n_big; ++i) out.push_back({i, WorkerKind::big, kBigAlpha, kBigBeta, 0.0});
  for (int i = 0; i < n_small; ++i) out.push_back({n_big + i, WorkerKind::small, kSmallAlpha, kSmallBeta, 0.0});
  return out;
}

void validate(std::span<const WorkerModel> workers) {
  ACK_REQUIRE(!workers.empty(), "need at least one worker");
  std::set<int> ids;
  for (const auto& w : workers) {
    ACK_REQUIRE(std::isfinite(w.alpha) && w.alpha >= 0.0, "worker alpha must be finite and non-negative");
    ACK_REQUIRE(std::isfinite(w.beta) && w.beta > 0.0, "worker beta must be finite and positive");
    ACK_REQUIRE(w.jitter >= 0.0 && w.jitter < 1.0, "worker jitter must lie in [0, 1)");
    ACK_REQUIRE(ids.insert(w.id).second, "worker ids must be unique");
  }
}

SchedulingPolicy lpt_policy() {
  return [](std::span<const TaskSpec> tasks, std::span<const WorkerModel> workers) {
    validate(workers);
    ScheduleTrace out(tasks.size());
    std::vector<std::size_t> all(tasks.size()), pool(workers.size());
    std::iota(all.begin(), all.end(), 0);
    std::iota(pool.begin(), pool.end(), 0);
    lpt_into(tasks, all, workers, pool, out);
    return out;
  };
}

SchedulingPolicy width_threshold_policy(int threshold) {
  ACK_REQUIRE(threshold >= 0, "threshold must be non-negative");
  return [threshold](std::span<const TaskSpec> tasks, std::span<const WorkerModel> workers) {
    validate(workers);
    std::vector<std::size_t> wide, narrow, big, small;
    for (std::size_t i = 0; i < tasks.size(); ++i) (tasks[i].width >= threshold ? wide : narrow).push_back(i);
    for (std::size_t w = 0; w < workers.size(); ++w)
      (workers[w].kind == WorkerKind::big ? big : small).push_back(w);
    ScheduleTrace out(tasks.size());
    lpt_into(tasks, wide, workers, big, out);
    lpt_into(tasks, narrow, workers, small, out);
    return out;
  };
}

int tune_threshold(std::span<const TaskSpec> tasks, std::span<const WorkerModel> workers) {
  std::set<int> candidates = {0};
  int widest = 0;
  for (const auto& t : tasks) {
    candidates.insert(t.width);
    widest = std::max(widest, t.width);
  }
  candidates.insert(widest + 1);
  int best = 0;
  double best_span = std::numeric_limits<double>::infinity();
  for (int th : candidates) {
    double span;
    try {
      span = makespan(width_threshold_policy(th)(tasks, workers));
    } catch (const InvalidArgument&) {
      continue;
    }
    if (span < best_span) {
      best_span = span;
      best = th;
    }
  }
  ACK_REQUIRE(std::isfinite(best_span), "no threshold admits the worker pool");
  return best;
}

double makespan(const ScheduleTrace& trace) {
  double m = 0.0;
  for (const auto& e : trace) m = std::max(m, e.end);
  return m;
}

ExecutionResult execute(std::span<const BranchTask> tasks, std::span<const WorkerModel> workers,
                        const SchedulingPolicy& policy, int lanes) {
  std::vector<TaskSpec> specs;
  std::set<std::uint64_t> ids;
  for (const auto& t : tasks) {
    ACK_REQUIRE(t.width() <= kMaxTaskWidth, "task wider than the statevector limit");
    ACK_REQUIRE(ids.insert(t.id).second, "task ids must be unique");
    specs.push_back({t.id, t.width()});
  }
  ExecutionResult r;
  r.trace = policy(specs, workers);
  ACK_REQUIRE(r.trace.size() == tasks.size(), "policy must schedule every task");

  r.values.assign(tasks.size(), 0.0);
  parallel_for(tasks.size(), lanes, [&](std::size_t i) {
    r.values[i] = tasks[i].weight * subcircuit_eval(tasks[i].circuit, tasks[i].insertions, tasks[i].observable);
  });
  std::vector<std::size_t> order(tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tasks[a].id < tasks[b].id; });
  std::vector<double> sorted;
  for (std::size_t i : order) sorted.push_back(r.values[i]);
  r.total = pairwise_sum(sorted);
  return r;
}

std::vector<TaskSpec> two_width_workload(int n_large, int w_large, int n_small, int w_small) {
  ACK_REQUIRE(n_large >= 0 && n_small >= 0, "task counts must be non-negative");
  std::vector<TaskSpec> out;
  std::uint64_t id = 0;
  for (int i = 0; i < n_large; ++i) out.push_back({id++, w_large});
  for (int i = 0; i < n_small; ++i) out.push_back({id++, w_small});
  return out;
}

}  // namespace ack
