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
#include <functional>
#include <span>
#include <vector>

#include "ack/knitting.hpp"

namespace ack {

enum class WorkerKind { big, small };

/// Modeled cost of a width-w statevector task: alpha + beta * w * 2^w,
/// optionally scaled by a deterministic per-task factor in
/// [1 - jitter, 1 + jitter].
struct WorkerModel {
  int id = 0;
  WorkerKind kind = WorkerKind::big;
  double alpha = 0.0;
  double beta = 1e-9;
  double jitter = 0.0;

  double cost(int width, std::uint64_t task_id = 0) const;
};

/// Accelerator-like workers: high fixed overhead, low per-amplitude rate.
inline constexpr double kBigAlpha = 2e-3;
inline constexpr double kBigBeta = 2e-10;
/// CPU-like workers: low overhead, high per-amplitude rate.
inline constexpr double kSmallAlpha = 1e-4;
inline constexpr double kSmallBeta = 5e-9;

/// Big workers get ids 0 .. n_big - 1, small ones follow.
std::vector<WorkerModel> default_workers(int n_big = 4, int n_small = 8);

void validate(std::span<const WorkerModel> workers);

struct TaskSpec {
  std::uint64_t id = 0;
  int width = 0;
};

struct TraceEntry {
  std::uint64_t task_id = 0;
  int width = 0;
  int worker_id = 0;
  double start = 0.0;
  double end = 0.0;
};

/// Entries in the order of the input tasks.
using ScheduleTrace = std::vector<TraceEntry>;

using SchedulingPolicy =
    std::function<ScheduleTrace(std::span<const TaskSpec>, std::span<const WorkerModel>)>;

/// Longest-processing-time-first onto the worker that finishes earliest.
SchedulingPolicy lpt_policy();

/// Width >= threshold runs on big workers, the rest on small workers, each
/// class scheduled longest-first. A class with tasks but no workers throws.
SchedulingPolicy width_threshold_policy(int threshold);

/// Threshold minimizing the modeled makespan over 0, every distinct width
/// and one past the largest; ties go to the smallest threshold.
int tune_threshold(std::span<const TaskSpec> tasks, std::span<const WorkerModel> workers);

double makespan(const ScheduleTrace& trace);

inline constexpr int kMaxTaskWidth = kMaxStatevectorQubits;

struct BranchTask {
  std::uint64_t id = 0;
  StaircaseCircuit circuit;
  std::vector<Insertion> insertions;
  std::optional<PauliTermList> observable;
  double weight = 1.0;

  int width() const { return circuit.n_qubits; }
};

struct ExecutionResult {
  std::vector<double> values;  // weight * weighted trace, input order
  double total = 0.0;          // pairwise sum in ascending task id
  ScheduleTrace trace;
};

/// Runs every task once on `lanes` threads. Values and total do not depend
/// on lanes or policy; the trace comes from the cost model.
ExecutionResult execute(std::span<const BranchTask> tasks, std::span<const WorkerModel> workers,
                        const SchedulingPolicy& policy, int lanes);

/// Two-width mix: n_large tasks of width w_large then n_small of
/// width w_small, ids in that order.
std::vector<TaskSpec> two_width_workload(int n_large = 2000, int w_large = 20, int n_small = 2000,
                                         int w_small = 10);

}  // namespace ack
