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
#include <algorithm>
#include <cmath>
#include <filesystem>

#include "gtest/gtest.h"

#include "ack/error.hpp"
#include "ack/rng.hpp"
#include "ack/serialize.hpp"

namespace ack {
namespace {

TEST(Serialize, FormatDoubleRoundTrips) {
  StreamRng rng(1, 0);
  for (int i = 0; i < 200; ++i) {
    const double x = std::ldexp(rng.normal(), static_cast<int>(rng.uniform() * 80) - 40);
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(Serialize, MatrixRoundTrip) {
  StreamRng rng(2, 0);
  const ComplexMatrix m = haar_unitary(4, rng).leftCols(3);
  const ComplexMatrix back = decode_matrix(Json::parse(encode(m).dump()));
  EXPECT_EQ(back, m);
  EXPECT_THROW(decode_matrix(Json{{"rows", 2}, {"cols", 2}, {"data", Json::array()}}), ConfigError);
}

TEST(Serialize, MpsRoundTripIsExact) {
  StreamRng rng(3, 0);
  const auto mps = MatrixProductState::random(7, 4, rng);
  const auto back = decode_mps(Json::parse(encode(mps).dump()));
  ASSERT_EQ(back.n_sites(), mps.n_sites());
  for (int i = 0; i < mps.n_sites(); ++i) {
    EXPECT_EQ(back.site(i)[0], mps.site(i)[0]);
    EXPECT_EQ(back.site(i)[1], mps.site(i)[1]);
  }
  EXPECT_EQ(back.ortho_center(), mps.ortho_center());
  EXPECT_THROW(decode_mps(Json{{"tensors", Json::array()}}), ConfigError);

  const auto centered = canonicalized(mps, 4);
  EXPECT_EQ(decode_mps(encode(centered)).ortho_center(), std::optional<int>(4));
  auto wrong = encode(centered);
  wrong["center"] = 0;
  EXPECT_THROW(decode_mps(wrong), ConfigError);
}

TEST(Serialize, CircuitRoundTrip) {
  const auto c = init_circuit(5, 2, CircuitInit::seeded_random, 4);
  const auto back = decode_circuit(Json::parse(encode(c).dump()));
  ASSERT_EQ(back.gates.size(), c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) EXPECT_EQ(back.gates[i].unitary, c.gates[i].unitary);
  Json bad = encode(c);
  bad["gates"][0]["unitary"] = encode(ComplexMatrix(2 * ComplexMatrix::Identity(4, 4)));
  EXPECT_THROW(decode_circuit(bad), ConfigError);
}

TEST(Serialize, AckResultRoundTrip) {
  AckConfig cfg;
  cfg.order_M = 1;
  cfg.optimize = {20, 1e-8, {}};
  const auto target = circuit_to_mps(init_circuit(12, 1, CircuitInit::seeded_random, 5));
  const auto r = run_ack(target, cfg);
  const Json j = Json::parse(encode(r).dump());
  ASSERT_FALSE(r.iterations.empty());
  EXPECT_TRUE(j["iterations"][0]["heatmap"][r.iterations[0].cuts[0]].is_null());
  const auto back = decode_ack_result(j);
  EXPECT_EQ(back.final_cuts, r.final_cuts);
  EXPECT_EQ(back.cut_plan.total_gamma, r.cut_plan.total_gamma);
  EXPECT_EQ(back.iterations.size(), r.iterations.size());
  EXPECT_EQ(back.iterations[0].heatmap, r.iterations[0].heatmap);
  EXPECT_TRUE(back.boundary_gates == r.boundary_gates);
  EXPECT_EQ(back.full_circuit.gates.size(), r.full_circuit.gates.size());
  EXPECT_EQ(encode(back).dump(), j.dump());
}

TEST(Serialize, AckConfigStrictKeys) {
  const Json ok = {{"n_partitions", 3}, {"order_M", 2}, {"max_sweeps", 50}};
  const auto cfg = decode_ack_config(ok, true);
  EXPECT_EQ(cfg.n_partitions, 3);
  EXPECT_EQ(cfg.partition_floor(), 4);
  EXPECT_EQ(cfg.optimize.max_sweeps, 50);
  const Json typo = {{"n_partitons", 3}};
  EXPECT_THROW(decode_ack_config(typo, true), ConfigError);
  EXPECT_NO_THROW(decode_ack_config(typo, false));
  EXPECT_THROW(decode_ack_config(Json{{"order_M", "three"}}, false), ConfigError);
  EXPECT_THROW(decode_ack_config(Json{{"boundary_offset", 1}}, false), ConfigError);
  EXPECT_EQ(decode_ack_config(encode(cfg), true).n_partitions, 3);
}

TEST(Serialize, TrajectoryCsvShape) {
  const auto inst = sample_disorder(LatticeGeometry::chain(6), DisorderFamily::clean(), 0);
  const auto init = MatrixProductState::from_product_state(bump_state(inst, 3));
  RecordOptions rec;
  rec.observables.push_back({"e3", energy_density_observable(inst, 3)});
  const auto traj = evolve(init, trotter_plan(inst, 0.25), 4, Truncation{}, rec);
  const auto csv = heatmap_csv(traj);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 5);
  const auto first = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(std::count(first.begin(), first.end(), ','), 5);
  const auto obs = observables_csv(traj);
  EXPECT_EQ(obs.substr(0, obs.find('\n')), "t,e3");
  const Json j = encode(traj, false);
  EXPECT_FALSE(j.contains("snapshots"));
  EXPECT_EQ(j["times"].size(), 5u);
}

TEST(Serialize, ScheduleCsv) {
  const auto trace = width_threshold_policy(8)(two_width_workload(2, 10, 3, 4), default_workers(1, 1));
  const auto csv = schedule_csv(trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "task,width,worker,start,end");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(Serialize, FilesAndParseErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "ack_serialize_test";
  write_json(dir / "x.json", Json{{"a", 1}});
  EXPECT_EQ(read_json(dir / "x.json")["a"], 1);
  write_text(dir / "bad.json", "{not json");
  EXPECT_THROW(read_json(dir / "bad.json"), ConfigError);
  EXPECT_THROW(read_text(dir / "missing.json"), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ack
