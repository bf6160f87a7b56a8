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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ack/driver.hpp"
#include "ack/knitting.hpp"
#include "ack/serialize.hpp"
#include "ack/spin_models.hpp"
#include "ack/tebd.hpp"

namespace ackc {

struct ModelSection {
  ack::DisorderFamily family = ack::DisorderFamily::longitudinal(2.0);
  ack::LatticeGeometry geometry = ack::LatticeGeometry::chain(20);
  std::vector<std::uint64_t> seeds{1};
  std::optional<int> center;  // defaults to the middle site (snake-mapped on grids)
};

struct EvolutionSection {
  double dt = 0.25;
  int steps = 14;
  int chi_max = 64;
  double trunc_tol = 1e-10;
  int order = 2;
  int record_every = 1;
};

enum class KnitRequest { automatic, exact, sampled, both };

struct KnittingSection {
  KnitRequest mode = KnitRequest::automatic;
  std::uint64_t n_samples = 10000;
  int n_repetitions = 10;
  std::uint64_t seed = 1;
  std::uint64_t branch_guard = ack::kDefaultBranchGuard;
  std::string observable = "energy";
};

struct ExecutorSection {
  int big_workers = 4;
  int small_workers = 8;
  std::string policy = "threshold";  // big_only, lpt or threshold
  std::optional<int> threshold;      // tuned when absent
};

struct RunConfig {
  ModelSection model;
  EvolutionSection evolution;
  ack::AckConfig ack;
  KnittingSection knitting;
  ExecutorSection executor;
  std::filesystem::path out_dir = "ackc_out";
  int threads = 1;
};

/// Missing sections and keys keep their defaults. With strict set, unknown
/// keys anywhere throw ConfigError.
RunConfig parse_run_config(const ack::Json& j, bool strict);
RunConfig load_run_config(const std::filesystem::path& path, bool strict);

struct Overrides {
  std::optional<std::uint64_t> seed;  // knitting seed; model seeds become seed, seed + 1, ...
  std::optional<std::filesystem::path> out_dir;
  std::optional<int> threads;
};

void apply(RunConfig& cfg, const Overrides& o);

ack::DisorderInstance instance_for(const RunConfig& cfg, std::uint64_t seed);
int center_site(const RunConfig& cfg);
ack::Trajectory evolve_instance(const RunConfig& cfg, std::uint64_t seed);

/// "energy", "energy:<site>" (needs the model section) or a Pauli sum such
/// as "0.5*Z3Z4 + X0 - Y2".
ack::PauliTermList parse_observable(const std::string& spec, const RunConfig& cfg);

struct EvolveOutput {
  std::vector<std::filesystem::path> files;
};

/// Per seed: trajectory JSON, heatmap CSV, observable CSV and the final
/// state JSON under <out>/evolve.
EvolveOutput cmd_evolve(const RunConfig& cfg);

/// Reads an MPS JSON file, runs the adaptive loop and writes
/// <out>/ack_result.json.
ack::AckResult cmd_ack(const RunConfig& cfg, const std::filesystem::path& state_file);

struct KnitOutput {
  std::string observable;
  std::vector<ack::KnitEstimate> estimates;
  ack::ScheduleTrace schedule;
};

/// Knits the observable over the stored plan and writes <out>/knit.json
/// plus the modeled branch schedule in <out>/schedule.csv.
KnitOutput cmd_knit(const RunConfig& cfg, const std::filesystem::path& ack_file, const std::string& observable);

/// Bump-state ensemble over the model seeds, adaptive against
/// load-balanced cuts. Writes <out>/comparison.csv and comparison.json.
ack::StrategyComparison cmd_compare(const RunConfig& cfg, bool force_baseline = false);

/// Process exit code for an exception escaping a command: 2 for
/// configuration problems, 3 for guards, 4 for failed self-checks.
int exit_code(const std::exception& e);

}  // namespace ackc
