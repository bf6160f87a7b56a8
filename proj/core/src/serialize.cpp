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
#include "ack/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ack/error.hpp"

namespace ack {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

Json encode_element(const ChannelElement& e) {
  Json outcomes = Json::array();
  for (const auto& o : e.outcomes) outcomes.push_back({{"sign", o.sign}, {"op", encode(ComplexMatrix(o.op))}});
  return {{"side", e.side == Side::A ? "A" : "B"}, {"label", e.label}, {"outcomes", outcomes}};
}

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) row += ',';
    row += format_double(values[i]);
  }
  return row + '\n';
}

template <typename Seq>
std::string join(const Seq& items, char sep) {
  std::string out;
  bool first = true;
  for (const auto& x : items) {
    if (!first) out += sep;
    first = false;
    out += std::to_string(x);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Json encode(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix decode_matrix(const Json& j) {
  const auto rows = field<Eigen::Index>(j, "rows");
  const auto cols = field<Eigen::Index>(j, "cols");
  const auto data = field<std::vector<std::array<double, 2>>>(j, "data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ConfigError("matrix data does not match its shape");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = data[r * cols + c];
      m(r, c) = cplx(v[0], v[1]);
    }
  return m;
}

Json encode(const MatrixProductState& mps) {
  Json tensors = Json::array();
  for (const auto& t : mps.tensors())
    tensors.push_back({{"left", t[0].rows()}, {"right", t[0].cols()}, {"data", {encode(t[0]), encode(t[1])}}});
  Json j = {{"n_sites", mps.n_sites()}, {"normalized", mps.normalized()}, {"tensors", tensors}};
  j["center"] = mps.ortho_center() ? Json(*mps.ortho_center()) : Json(nullptr);
  return j;
}

MatrixProductState decode_mps(const Json& j) {
  const int n = field<int>(j, "n_sites");
  const auto& tensors = j.at("tensors");
  if (!tensors.is_array() || static_cast<int>(tensors.size()) != n) throw ConfigError("tensor count differs from n_sites");
  std::vector<MatrixProductState::SiteTensor> out;
  for (const auto& t : tensors) {
    const auto& data = t.at("data");
    if (!data.is_array() || data.size() != 2) throw ConfigError("site tensor needs two physical slices");
    out.push_back({decode_matrix(data[0]), decode_matrix(data[1])});
  }
  const bool normalized = j.value("normalized", true);
  std::optional<int> center;
  if (j.contains("center") && !j.at("center").is_null()) center = field<int>(j, "center");
  try {
    return MatrixProductState(std::move(out), normalized, center);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid MPS: ") + e.what());
  }
}

Json encode(const LatticeGeometry& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"kind", g.kind == LatticeKind::chain ? "chain" : "grid"},
          {"n_sites", g.n_sites},
          {"rows", g.rows},
          {"cols", g.cols},
          {"edges", edges}};
}

Json encode(const DisorderInstance& inst) {
  return {{"geometry", encode(inst.geometry)},
          {"family",
           {{"name", family_name(inst.family.kind)}, {"W", inst.family.W}, {"g", inst.family.g}, {"h", inst.family.h}}},
          {"seed", inst.seed},
          {"couplings", inst.couplings},
          {"transverse", inst.transverse},
          {"longitudinal", inst.longitudinal}};
}

Json encode(const StaircaseCircuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates) gates.push_back({{"layer", g.layer}, {"site", g.site}, {"unitary", encode(g.unitary)}});
  return {{"n_qubits", c.n_qubits}, {"order_M", c.order_M}, {"gates", gates}};
}

StaircaseCircuit decode_circuit(const Json& j) {
  StaircaseCircuit c;
  c.n_qubits = field<int>(j, "n_qubits");
  c.order_M = field<int>(j, "order_M");
  for (const auto& g : j.at("gates")) {
    const ComplexMatrix u = decode_matrix(g.at("unitary"));
    if (u.rows() != 4 || u.cols() != 4) throw ConfigError("circuit gates must be 4x4");
    c.gates.push_back({field<int>(g, "layer"), field<int>(g, "site"), Mat4(u)});
  }
  try {
    validate(c);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid circuit: ") + e.what());
  }
  return c;
}

Json encode(const CutPlan& plan) {
  Json gates = Json::array();
  for (std::size_t g = 0; g < plan.cut_gates.size(); ++g) {
    const auto& ref = plan.cut_gates[g];
    const auto& q = plan.qpds[g];
    Json terms = Json::array();
    for (const auto& t : q.terms)
      terms.push_back({{"coeff", t.coeff}, {"a", encode_element(t.a)}, {"b", encode_element(t.b)}});
    gates.push_back({{"cut", ref.cut},
                     {"layer", ref.layer},
                     {"bond", ref.bond},
                     {"gamma", q.gamma},
                     {"angles", q.angles},
                     {"dressing",
                      {{"pre_a", encode(ComplexMatrix(q.dressing.pre_a))},
                       {"pre_b", encode(ComplexMatrix(q.dressing.pre_b))},
                       {"post_a", encode(ComplexMatrix(q.dressing.post_a))},
                       {"post_b", encode(ComplexMatrix(q.dressing.post_b))}}},
                     {"terms", terms}});
  }
  return {{"cuts", plan.cuts}, {"total_gamma", plan.total_gamma}, {"gates", gates}};
}

Json encode(const KnitEstimate& est) {
  return {{"mode", est.mode == KnitMode::exact_enumeration ? "exact" : "monte_carlo"},
          {"value", est.value},
          {"std_error", est.std_error},
          {"n_samples", est.n_samples},
          {"n_repetitions", est.n_repetitions},
          {"seed", est.seed},
          {"n_branches", est.n_branches},
          {"total_gamma", est.total_gamma}};
}

Json encode(const AckResult& r) {
  Json iterations = Json::array();
  for (const auto& it : r.iterations) {
    Json heat = Json::array();
    for (const auto& v : it.heatmap) heat.push_back(v ? Json(*v) : Json(nullptr));
    iterations.push_back({{"cuts", it.cuts}, {"heatmap", heat}, {"fidelities", it.fidelities}});
  }
  Json parts = Json::array();
  for (const auto& c : r.partition_circuits) parts.push_back(encode(c));
  Json boundary = Json::array();
  for (const auto& per_cut : r.boundary_gates) {
    Json gates = Json::array();
    for (const auto& g : per_cut) gates.push_back(encode(g));
    boundary.push_back(gates);
  }
  return {{"final_cuts", r.final_cuts},
          {"revisited", r.revisited},
          {"total_gamma", r.cut_plan.total_gamma},
          {"state_gamma", r.state_gamma},
          {"full_fidelity", r.full_fidelity},
          {"iterations", iterations},
          {"partition_circuits", parts},
          {"boundary_gates", boundary},
          {"full_circuit", encode(r.full_circuit)},
          {"cut_plan", encode(r.cut_plan)}};
}

AckResult decode_ack_result(const Json& j) {
  AckResult r;
  r.final_cuts = field<std::vector<int>>(j, "final_cuts");
  r.revisited = j.value("revisited", false);
  r.state_gamma = j.value("state_gamma", 1.0);
  r.full_fidelity = j.value("full_fidelity", 0.0);
  for (const auto& it : j.value("iterations", Json::array())) {
    AckIteration out;
    out.cuts = field<std::vector<int>>(it, "cuts");
    for (const auto& v : it.at("heatmap")) out.heatmap.push_back(v.is_null() ? std::nullopt : std::optional(v.get<double>()));
    out.fidelities = field<std::vector<double>>(it, "fidelities");
    r.iterations.push_back(std::move(out));
  }
  for (const auto& c : j.value("partition_circuits", Json::array())) r.partition_circuits.push_back(decode_circuit(c));
  for (const auto& per_cut : j.value("boundary_gates", Json::array())) {
    std::vector<Mat4> gates;
    for (const auto& g : per_cut) gates.push_back(decode_matrix(g));
    r.boundary_gates.push_back(std::move(gates));
  }
  r.full_circuit = decode_circuit(j.at("full_circuit"));
  try {
    r.cut_plan = make_cut_plan(r.full_circuit, r.final_cuts);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("stored cuts do not fit the circuit: ") + e.what());
  }
  return r;
}

Json encode(const AckConfig& cfg) {
  return {{"n_partitions", cfg.n_partitions},
          {"order_M", cfg.order_M},
          {"chi_max", cfg.chi_max},
          {"search_window", cfg.search_window},
          {"min_partition_size", cfg.partition_floor()},
          {"min_cut_gap", cfg.min_cut_gap},
          {"max_outer_iters", cfg.max_outer_iters},
          {"boundary_offset", cfg.boundary_offset},
          {"max_sweeps", cfg.optimize.max_sweeps},
          {"rel_tol", cfg.optimize.rel_tol}};
}

AckConfig decode_ack_config(const Json& j, bool strict) {
  if (!j.is_object()) throw ConfigError("ack section must be an object");
  static const std::set<std::string> known = {"n_partitions",  "order_M",         "chi_max",
                                              "search_window", "min_partition_size", "min_cut_gap",
                                              "max_outer_iters", "boundary_offset", "max_sweeps",
                                              "rel_tol"};
  if (strict)
    for (const auto& [k, v] : j.items())
      if (!known.count(k)) throw ConfigError("unknown key 'ack." + k + "'");
  AckConfig cfg;
  const auto opt = [&](const char* key, auto& dst) {
    if (j.contains(key)) dst = field<std::decay_t<decltype(dst)>>(j, key);
  };
  opt("n_partitions", cfg.n_partitions);
  opt("order_M", cfg.order_M);
  opt("chi_max", cfg.chi_max);
  opt("search_window", cfg.search_window);
  opt("min_partition_size", cfg.min_partition_size);
  opt("min_cut_gap", cfg.min_cut_gap);
  opt("max_outer_iters", cfg.max_outer_iters);
  opt("boundary_offset", cfg.boundary_offset);
  opt("max_sweeps", cfg.optimize.max_sweeps);
  opt("rel_tol", cfg.optimize.rel_tol);
  validate(cfg);
  return cfg;
}

Json encode(const Trajectory& t, bool with_snapshots) {
  Json j = {{"times", t.times},
            {"heatmaps", t.heatmaps},
            {"observable_names", t.observable_names},
            {"observables", t.observables},
            {"discarded_weight_total", t.discarded_weight_total}};
  if (with_snapshots) {
    Json snaps = Json::array();
    for (const auto& [time, state] : t.snapshots) snaps.push_back({{"t", time}, {"state", encode(state)}});
    j["snapshots"] = snaps;
  }
  return j;
}

std::string heatmap_csv(const Trajectory& t) {
  std::string out = "t";
  const std::size_t bonds = t.heatmaps.empty() ? 0 : t.heatmaps.front().size();
  for (std::size_t b = 0; b < bonds; ++b) out += ",bond" + std::to_string(b);
  out += '\n';
  for (std::size_t i = 0; i < t.heatmaps.size(); ++i) {
    std::vector<double> row = {t.times.at(i)};
    row.insert(row.end(), t.heatmaps[i].begin(), t.heatmaps[i].end());
    out += csv_row(row);
  }
  return out;
}

std::string observables_csv(const Trajectory& t) {
  std::string out = "t";
  for (const auto& name : t.observable_names) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < t.observables.size(); ++i) {
    std::vector<double> row = {t.times.at(i)};
    row.insert(row.end(), t.observables[i].begin(), t.observables[i].end());
    out += csv_row(row);
  }
  return out;
}

std::string schedule_csv(const ScheduleTrace& trace) {
  std::string out = "task,width,worker,start,end\n";
  for (const auto& e : trace)
    out += std::to_string(e.task_id) + ',' + std::to_string(e.width) + ',' + std::to_string(e.worker_id) + ',' +
           format_double(e.start) + ',' + format_double(e.end) + '\n';
  return out;
}

Json encode(const StrategyComparison& cmp) {
  Json rows = Json::array();
  for (const auto& r : cmp.rows)
    rows.push_back({{"adaptive_cuts", r.adaptive_cuts},
                    {"baseline_cuts", r.baseline_cuts},
                    {"adaptive_gamma", r.adaptive_gamma},
                    {"baseline_gamma", r.baseline_gamma},
                    {"adaptive_state_gamma", r.adaptive_state_gamma},
                    {"baseline_state_gamma", r.baseline_state_gamma},
                    {"ratio", r.ratio}});
  return {{"n_instances", cmp.rows.size()},
          {"median_ratio", cmp.median_ratio},
          {"p90_ratio", cmp.p90_ratio},
          {"fraction_improved", cmp.fraction_improved},
          {"fraction_not_worse", cmp.fraction_not_worse},
          {"rows", rows}};
}

std::string comparison_csv(const StrategyComparison& cmp) {
  std::string out =
      "instance,adaptive_cuts,baseline_cuts,adaptive_gamma,baseline_gamma,adaptive_state_gamma,"
      "baseline_state_gamma,ratio\n";
  for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
    const auto& r = cmp.rows[i];
    out += std::to_string(i) + ',' + join(r.adaptive_cuts, ' ') + ',' + join(r.baseline_cuts, ' ') + ',' +
           format_double(r.adaptive_gamma) + ',' + format_double(r.baseline_gamma) + ',' +
           format_double(r.adaptive_state_gamma) + ',' + format_double(r.baseline_state_gamma) + ',' +
           format_double(r.ratio) + '\n';
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + '\n'); }

}  // namespace ack
