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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ack/circuit.hpp"
#include "ack/driver.hpp"
#include "ack/executor.hpp"
#include "ack/knitting.hpp"
#include "ack/mps.hpp"
#include "ack/qpd.hpp"
#include "ack/spin_models.hpp"
#include "ack/tebd.hpp"

namespace ack {

using Json = nlohmann::json;

// Complex matrices are {"rows", "cols", "data": [[re, im], ...]} row-major.
Json encode(const ComplexMatrix& m);
ComplexMatrix decode_matrix(const Json& j);

// {"n_sites", "normalized", "center", "tensors": [{"left", "right", "data": [A[0], A[1]]}]}
Json encode(const MatrixProductState& mps);
MatrixProductState decode_mps(const Json& j);

Json encode(const LatticeGeometry& g);
Json encode(const DisorderInstance& inst);

// {"n_qubits", "order_M", "gates": [{"layer", "site", "unitary"}]}
Json encode(const StaircaseCircuit& c);
StaircaseCircuit decode_circuit(const Json& j);

Json encode(const CutPlan& plan);
Json encode(const KnitEstimate& est);

/// Missing heatmap entries are written as null.
Json encode(const AckResult& r);
/// Rebuilds the cut plan from the stored full circuit and cuts.
AckResult decode_ack_result(const Json& j);

Json encode(const AckConfig& cfg);
/// Fills fields present in j over the defaults; with strict set, unknown
/// keys throw ConfigError.
AckConfig decode_ack_config(const Json& j, bool strict);

Json encode(const Trajectory& t, bool with_snapshots = true);
/// One row per recorded time: t, then the entropy of every bond.
std::string heatmap_csv(const Trajectory& t);
/// One row per recorded time: t, then every named observable.
std::string observables_csv(const Trajectory& t);

/// Columns task,width,worker,start,end.
std::string schedule_csv(const ScheduleTrace& trace);

Json encode(const StrategyComparison& cmp);
std::string comparison_csv(const StrategyComparison& cmp);

/// Shortest round-trip representation.
std::string format_double(double x);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
/// Parse errors become ConfigError naming the file.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace ack
