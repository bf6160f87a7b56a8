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
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "ack/circuit.hpp"
#include "ack/error.hpp"
#include "ack/statevector.hpp"
#include "commands.hpp"

namespace {

namespace fs = std::filesystem;
using ack::Json;
using ackc::RunConfig;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ackc_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Json small_config(const fs::path& out, int n = 12) {
  return {{"model",
           {{"family", "longitudinal_disorder"},
            {"W", 2.0},
            {"geometry", {{"kind", "chain"}, {"n_sites", n}}},
            {"seeds", {3, 4}}}},
          {"evolution", {{"dt", 0.25}, {"steps", 8}, {"chi_max", 32}, {"trunc_tol", 1e-10}}},
          {"ack", {{"n_partitions", 2}, {"order_M", 2}, {"max_outer_iters", 2}}},
          {"knitting", {{"mode", "both"}, {"n_samples", 4000}, {"n_repetitions", 8}, {"seed", 9}}},
          {"outputs", {{"dir", out.string()}}}};
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(ACKC_BIN) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(RunConfig, DefaultsAndSections) {
  const auto cfg = ackc::parse_run_config(Json::object(), true);
  EXPECT_EQ(cfg.model.geometry.n_sites, 20);
  EXPECT_EQ(cfg.ack.order_M, 3);
  EXPECT_EQ(cfg.threads, 1);

  const auto grid = ackc::parse_run_config(
      {{"model", {{"family", "clean"}, {"geometry", {{"kind", "grid"}, {"rows", 4}, {"cols", 4}}}}}}, true);
  EXPECT_EQ(grid.model.geometry.n_sites, 16);
  EXPECT_EQ(grid.model.family.kind, ack::FamilyKind::clean);
  EXPECT_EQ(ackc::center_site(grid), ack::snake_index(2, 2, 4));
}

TEST(RunConfig, StrictRejectsMisspelledKeys) {
  const Json cases[] = {{{"modle", Json::object()}},
                        {{"model", {{"seed", {1}}}}},
                        {{"model", {{"geometry", {{"n_sites", 8}, {"n_site", 8}}}}}},
                        {{"evolution", {{"dt", 0.25}, {"step", 3}}}},
                        {{"ack", {{"order_m", 2}}}},
                        {{"knitting", {{"samples", 10}}}},
                        {{"executor", {{"polcy", "lpt"}}}},
                        {{"outputs", {{"directory", "x"}}}}};
  for (const auto& j : cases) {
    EXPECT_THROW(ackc::parse_run_config(j, true), ack::ConfigError) << j.dump();
    EXPECT_NO_THROW(ackc::parse_run_config(j, false)) << j.dump();
  }
}

TEST(RunConfig, RejectsBadValues) {
  const Json cases[] = {{{"evolution", {{"dt", -1.0}}}},
                        {{"evolution", {{"steps", "many"}}}},
                        {{"model", {{"family", "glassy"}}}},
                        {{"model", {{"seeds", Json::array()}}}},
                        {{"knitting", {{"mode", "guess"}}}},
                        {{"executor", {{"policy", "random"}}}},
                        {{"ack", {{"boundary_offset", 1}}}},
                        {{"threads", 0}}};
  for (const auto& j : cases) EXPECT_THROW(ackc::parse_run_config(j, false), ack::ConfigError) << j.dump();
}

TEST(RunConfig, SeedOverrideRenumbersModelSeeds) {
  auto cfg = ackc::parse_run_config({{"model", {{"seeds", {5, 9, 11}}}}}, true);
  ackc::apply(cfg, {100, fs::path("elsewhere"), 3});
  EXPECT_EQ(cfg.model.seeds, (std::vector<std::uint64_t>{100, 101, 102}));
  EXPECT_EQ(cfg.knitting.seed, 100u);
  EXPECT_EQ(cfg.out_dir, fs::path("elsewhere"));
  EXPECT_EQ(cfg.threads, 3);
}

TEST(Observable, PauliSumSyntax) {
  const RunConfig cfg;
  const auto terms = ackc::parse_observable("0.5*Z3Z4 + X0 - 2*Y2", cfg);
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[0].coeff, 0.5);
  EXPECT_EQ(terms[0].string, ack::PauliString({{3, 'Z'}, {4, 'Z'}}));
  EXPECT_EQ(terms[1].coeff, 1.0);
  EXPECT_EQ(terms[2].coeff, -2.0);
  EXPECT_EQ(terms[2].string, ack::PauliString({{2, 'Y'}}));
  EXPECT_THROW(ackc::parse_observable("Z3Z3", cfg), ack::ConfigError);
  EXPECT_THROW(ackc::parse_observable("0.5 Z1", cfg), ack::ConfigError);
  EXPECT_THROW(ackc::parse_observable("Z1 * X2", cfg), ack::ConfigError);
}

TEST(Observable, EnergyMatchesLibrary) {
  const RunConfig cfg;
  const auto inst = ackc::instance_for(cfg, cfg.model.seeds.front());
  EXPECT_EQ(ackc::parse_observable("energy", cfg), ack::energy_density_observable(inst, 10));
  EXPECT_EQ(ackc::parse_observable("energy:4", cfg), ack::energy_density_observable(inst, 4));
  EXPECT_THROW(ackc::parse_observable("energy:40", cfg), ack::ConfigError);
}

TEST(CmdEvolve, HeatmapShapeAndDeterminism) {
  const auto dir = scratch("evolve");
  auto j = small_config(dir / "a", 20);
  j["model"]["family"] = "clean";
  j["evolution"]["steps"] = 6;
  auto cfg = ackc::parse_run_config(j, true);
  const auto out = ackc::cmd_evolve(cfg);
  EXPECT_EQ(out.files.size(), 8u);

  const auto csv = ack::read_text(dir / "a/evolve/heatmap_seed_3.csv");
  std::size_t lines = 0, commas = 0;
  for (char c : csv) lines += c == '\n';
  for (char c : csv.substr(0, csv.find('\n'))) commas += c == ',';
  EXPECT_EQ(lines, 1u + 7u);  // header + (steps + 1)
  EXPECT_EQ(commas, 19u);     // t + (N - 1) bonds

  ackc::apply(cfg, {std::nullopt, dir / "b", 2});
  ackc::cmd_evolve(cfg);
  for (const char* f : {"heatmap_seed_4.csv", "state_seed_4.json", "trajectory_seed_3.json"})
    EXPECT_EQ(ack::read_text(dir / "a/evolve" / f), ack::read_text(dir / "b/evolve" / f)) << f;
}

TEST(CmdAck, SinglePartitionHasUnitGamma) {
  const auto dir = scratch("ack_p1");
  auto j = small_config(dir);
  j["ack"]["n_partitions"] = 1;
  const auto cfg = ackc::parse_run_config(j, true);
  ackc::cmd_evolve(cfg);
  const auto r = ackc::cmd_ack(cfg, dir / "evolve/state_seed_3.json");
  EXPECT_TRUE(r.final_cuts.empty());
  EXPECT_EQ(r.cut_plan.total_gamma, 1.0);
  EXPECT_EQ(ack::read_json(dir / "ack_result.json").at("total_gamma").get<double>(), 1.0);
}

TEST(CmdAck, ProductStateGivesZeroHeatmap) {
  const auto dir = scratch("ack_product");
  const auto cfg = ackc::parse_run_config(small_config(dir), true);
  ack::write_json(dir / "zero.json", ack::encode(ack::MatrixProductState::zero_state(12)));
  const auto r = ackc::cmd_ack(cfg, dir / "zero.json");
  for (const auto& it : r.iterations)
    for (const auto& v : it.heatmap)
      if (v) EXPECT_NEAR(*v, 0.0, 1e-12);
  EXPECT_NEAR(r.state_gamma, 1.0, 1e-12);
}

TEST(CmdAck, MatchesLibraryOnTwentySites) {
  const auto dir = scratch("ack_n20");
  auto j = small_config(dir, 20);
  j["evolution"]["steps"] = 10;
  const auto cfg = ackc::parse_run_config(j, true);
  ackc::cmd_evolve(cfg);
  const auto cli = ackc::cmd_ack(cfg, dir / "evolve/state_seed_3.json");

  const auto lib = ack::run_ack(ackc::evolve_instance(cfg, 3).final_state, cfg.ack);
  EXPECT_EQ(ack::encode(cli).dump(), ack::encode(lib).dump());
  EXPECT_EQ(ack::read_json(dir / "ack_result.json"), ack::encode(lib));
}

class CmdKnit : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(scratch("knit"));
    cfg_ = new RunConfig(ackc::parse_run_config(small_config(*dir_), true));
    ackc::cmd_evolve(*cfg_);
    ackc::cmd_ack(*cfg_, *dir_ / "evolve/state_seed_3.json");
  }
  static void TearDownTestSuite() {
    delete cfg_;
    delete dir_;
  }
  static fs::path* dir_;
  static RunConfig* cfg_;
};
fs::path* CmdKnit::dir_ = nullptr;
RunConfig* CmdKnit::cfg_ = nullptr;

TEST_F(CmdKnit, ExactAndSampledAgree) {
  const auto out = ackc::cmd_knit(*cfg_, *dir_ / "ack_result.json", "energy");
  ASSERT_EQ(out.estimates.size(), 2u);
  const auto& exact = out.estimates[0];
  const auto& sampled = out.estimates[1];
  EXPECT_EQ(exact.mode, ack::KnitMode::exact_enumeration);
  EXPECT_EQ(sampled.mode, ack::KnitMode::monte_carlo);
  EXPECT_GT(sampled.std_error, 0.0);
  EXPECT_LT(std::abs(exact.value - sampled.value), 5 * sampled.std_error);

  const auto stored = ack::decode_ack_result(ack::read_json(*dir_ / "ack_result.json"));
  const auto obs = ack::energy_density_observable(ackc::instance_for(*cfg_, 3), 6);
  EXPECT_EQ(exact.value, ack::knit_exact(stored.full_circuit, stored.cut_plan, obs).value);
  EXPECT_TRUE(fs::exists(*dir_ / "schedule.csv"));
}

TEST_F(CmdKnit, DeterministicGivenSeed) {
  auto cfg = *cfg_;
  cfg.knitting.mode = ackc::KnitRequest::sampled;
  cfg.knitting.n_samples = 500;
  const auto a = ackc::cmd_knit(cfg, *dir_ / "ack_result.json", "Z5Z6 + 0.5*X7");
  const auto ja = ack::read_text(*dir_ / "knit.json");
  cfg.threads = 3;
  const auto b = ackc::cmd_knit(cfg, *dir_ / "ack_result.json", "Z5Z6 + 0.5*X7");
  EXPECT_EQ(a.estimates[0].value, b.estimates[0].value);
  EXPECT_EQ(a.estimates[0].std_error, b.estimates[0].std_error);
  EXPECT_EQ(ja, ack::read_text(*dir_ / "knit.json"));
}

TEST_F(CmdKnit, IdentityCutPlanGivesUncutValue) {
  auto stored = ack::decode_ack_result(ack::read_json(*dir_ / "ack_result.json"));
  stored.final_cuts.clear();
  stored.cut_plan = ack::make_cut_plan(stored.full_circuit, {});
  ack::write_json(*dir_ / "uncut.json", ack::encode(stored));
  const auto out = ackc::cmd_knit(*cfg_, *dir_ / "uncut.json", "energy");

  auto sv = ack::Statevector::zero(stored.full_circuit.n_qubits);
  for (const auto& g : stored.full_circuit.gates) {
    const std::array<int, 2> q = {g.site, g.site + 1};
    ack::sv_apply_inplace(sv, g.unitary, q);
  }
  const auto obs = ack::energy_density_observable(ackc::instance_for(*cfg_, 3), 6);
  for (const auto& e : out.estimates) {
    EXPECT_EQ(e.total_gamma, 1.0);
    EXPECT_NEAR(e.value, ack::sv_expectation(sv, obs), 1e-10);
  }
}

TEST_F(CmdKnit, GuardOverflowIsReported) {
  auto cfg = *cfg_;
  cfg.knitting.mode = ackc::KnitRequest::exact;
  cfg.knitting.branch_guard = 2;
  try {
    ackc::cmd_knit(cfg, *dir_ / "ack_result.json", "energy");
    FAIL() << "expected a guard error";
  } catch (const ack::GuardError& e) {
    EXPECT_NE(std::string(e.what()).find("sampled"), std::string::npos);
    EXPECT_EQ(ackc::exit_code(e), 3);
  }
}

TEST(CmdCompare, ForcedBaselineAndSummary) {
  const auto dir = scratch("compare");
  auto j = small_config(dir);
  j["model"]["seeds"] = {1, 2, 3};
  j["evolution"]["steps"] = 6;
  const auto cfg = ackc::parse_run_config(j, true);

  const auto forced = ackc::cmd_compare(cfg, true);
  for (const auto& row : forced.rows) EXPECT_EQ(row.ratio, 1.0);

  const auto cmp = ackc::cmd_compare(cfg);
  std::vector<double> ratios;
  double improved = 0;
  for (const auto& row : cmp.rows) {
    ratios.push_back(row.baseline_gamma / row.adaptive_gamma);
    improved += row.adaptive_gamma < row.baseline_gamma;
  }
  EXPECT_EQ(cmp.median_ratio, ack::quantile(ratios, 0.5));
  EXPECT_EQ(cmp.p90_ratio, ack::quantile(ratios, 0.9));
  EXPECT_EQ(cmp.fraction_improved, improved / 3);
  const auto summary = ack::read_json(dir / "comparison.json");
  EXPECT_EQ(summary.at("median_ratio").get<double>(), cmp.median_ratio);
  EXPECT_EQ(summary.at("rows").size(), 3u);
}

TEST(ExitCodes, MapErrorKinds) {
  EXPECT_EQ(ackc::exit_code(ack::ConfigError("x")), 2);
  EXPECT_EQ(ackc::exit_code(ack::InvalidArgument("x")), 2);
  EXPECT_EQ(ackc::exit_code(ack::GuardError("x")), 3);
  EXPECT_EQ(ackc::exit_code(ack::VerificationError("x")), 4);
}

TEST(ExitCodes, BinaryReportsConfigErrors) {
  const auto dir = scratch("binary");
  ack::write_text(dir / "typo.json", R"({"modle": {}})");
  ack::write_text(dir / "broken.json", "{ not json");
  ack::write_json(dir / "ok.json", small_config(dir / "out"));
  EXPECT_EQ(run_cli("--config " + (dir / "typo.json").string() + " --strict evolve"), 2);
  EXPECT_EQ(run_cli("--config " + (dir / "broken.json").string() + " evolve"), 2);
  EXPECT_EQ(run_cli("--config " + (dir / "ok.json").string()), 2);
  EXPECT_EQ(run_cli("--config " + (dir / "ok.json").string() + " evolve --threads 2"), 0);
  EXPECT_TRUE(fs::exists(dir / "out/evolve/state_seed_4.json"));
}

}  // namespace
