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
#include "ack/pauli.hpp"
#include "ack/qpd.hpp"

namespace ack {

/// A channel element placed on one qubit of a partition circuit, either
/// just before the gates of `layer` or just after them.
struct Insertion {
  int layer = 0;
  int qubit = 0;
  bool after_layer = false;
  ChannelElement element;
};

/// Sum over outcome combinations of (product of signs) <psi|O|psi> for the
/// unnormalized branch states. No observable means the identity.
double subcircuit_eval(const StaircaseCircuit& part, std::span<const Insertion> insertions,
                       const std::optional<PauliTermList>& observable = std::nullopt);

/// Weighted traces of several Pauli strings from one simulation.
std::vector<double> subcircuit_traces(const StaircaseCircuit& part, std::span<const Insertion> insertions,
                                      std::span<const PauliString> strings);

enum class KnitMode { exact_enumeration, monte_carlo };

struct KnitEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;  // per repetition
  int n_repetitions = 0;
  std::uint64_t seed = 0;
  KnitMode mode = KnitMode::exact_enumeration;
  std::uint64_t n_branches = 0;
  double total_gamma = 1.0;
};

struct KnitOptions {
  std::uint64_t branch_guard = kDefaultBranchGuard;
  int lanes = 1;
};

/// Sum over every branch of weight * product of partition traces.
KnitEstimate knit_exact(const StaircaseCircuit& full, const CutPlan& plan, const PauliTermList& observable,
                        const KnitOptions& opts = {});

/// Draws one term per cut gate with probability |c| / gamma. The value is
/// the mean over repetitions; std_error is the spread of the per-repetition
/// means, i.e. the error of a single n_samples estimate.
KnitEstimate knit_sampled(const StaircaseCircuit& full, const CutPlan& plan, const PauliTermList& observable,
                          std::uint64_t n_samples, std::uint64_t seed, int n_repetitions = 10,
                          const KnitOptions& opts = {});

}  // namespace ack
