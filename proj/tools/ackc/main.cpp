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
#include <cstdio>
#include <iostream>

#include <CLI/CLI.hpp>

#include "ack/serialize.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ackc: adaptive circuit knitting batch runner"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  ackc::Overrides overrides;
  bool strict = false;
  app.add_option("--config", config_path, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", overrides.seed, "override knitting.seed and renumber model.seeds from it");
  app.add_option("--out", overrides.out_dir, "output directory");
  app.add_option("--threads", overrides.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", strict, "reject unknown configuration keys");

  auto* evolve = app.add_subcommand("evolve", "TEBD bump evolution per model seed");
  auto* ack_cmd = app.add_subcommand("ack", "adaptive cut search on a stored state");
  std::string state_file;
  ack_cmd->add_option("--state", state_file, "MPS JSON written by evolve")->required()->check(CLI::ExistingFile);
  auto* knit = app.add_subcommand("knit", "knit an observable over a stored ack result");
  std::string ack_file, observable;
  knit->add_option("--ack", ack_file, "ack_result.json")->required()->check(CLI::ExistingFile);
  knit->add_option("--observable", observable, "energy, energy:<site> or a Pauli sum like 0.5*Z3Z4 + X0");
  auto* compare = app.add_subcommand("compare", "adaptive against load-balanced cuts on the ensemble");
  bool force_baseline = false;
  compare->add_flag("--force-baseline", force_baseline, "run load-balanced cuts in both arms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto cfg = ackc::load_run_config(config_path, strict);
    ackc::apply(cfg, overrides);
    if (evolve->parsed()) {
      const auto out = ackc::cmd_evolve(cfg);
      std::printf("evolve: wrote %zu files under %s\n", out.files.size(), (cfg.out_dir / "evolve").c_str());
    } else if (ack_cmd->parsed()) {
      const auto r = ackc::cmd_ack(cfg, state_file);
      std::printf("ack: cuts");
      for (int c : r.final_cuts) std::printf(" %d", c);
      std::printf(" total_gamma %s after %zu iterations\n", ack::format_double(r.cut_plan.total_gamma).c_str(),
                  r.iterations.size());
    } else if (knit->parsed()) {
      const auto out = ackc::cmd_knit(cfg, ack_file, observable.empty() ? cfg.knitting.observable : observable);
      for (const auto& e : out.estimates)
        std::printf("knit: %s %s +- %s\n", e.mode == ack::KnitMode::exact_enumeration ? "exact" : "sampled",
                    ack::format_double(e.value).c_str(), ack::format_double(e.std_error).c_str());
    } else if (compare->parsed()) {
      const auto c = ackc::cmd_compare(cfg, force_baseline);
      std::printf("compare: %zu instances, median ratio %s, fraction improved %s\n", c.rows.size(),
                  ack::format_double(c.median_ratio).c_str(), ack::format_double(c.fraction_improved).c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "ackc: " << e.what() << '\n';
    return ackc::exit_code(e);
  }
  return 0;
}
