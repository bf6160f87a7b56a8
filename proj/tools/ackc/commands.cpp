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
#include "commands.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include "ack/error.hpp"
#include "ack/executor.hpp"
#include "ack/mps.hpp"
#include "ack/parallel.hpp"

namespace ackc {
namespace {

using ack::ConfigError;
using ack::Json;

class Section {
 public:
  Section(const Json& j, std::string name, bool strict) : j_(j), name_(std::move(name)), strict_(strict) {
    if (!j_.is_object()) throw ConfigError("section '" + name_ + "' must be an object");
  }

  template <typename T>
  void get(const char* key, T& dst) {
    used_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    try {
      dst = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad value for '" + name_ + "." + key + "': " + e.what());
    }
  }

  const Json* child(const char* key) {
    used_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    if (!strict_) return;
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw ConfigError("unknown key '" + name_ + "." + k + "'");
  }

 private:
  const Json& j_;
  std::string name_;
  bool strict_;
  std::set<std::string> used_;
};

ack::LatticeGeometry parse_geometry(const Json& j, bool strict) {
  Section s(j, "model.geometry", strict);
  std::string kind = "chain";
  int n_sites = 0, rows = 0, cols = 0;
  s.get("kind", kind);
  s.get("n_sites", n_sites);
  s.get("rows", rows);
  s.get("cols", cols);
  s.finish();
  if (kind == "chain") {
    if (n_sites < 2) throw ConfigError("model.geometry.n_sites must be at least 2");
    return ack::LatticeGeometry::chain(n_sites);
  }
  if (kind == "grid") {
    if (rows < 1 || cols < 1 || rows * cols < 2) throw ConfigError("model.geometry needs rows, cols >= 1");
    return ack::LatticeGeometry::grid(rows, cols);
  }
  throw ConfigError("model.geometry.kind must be chain or grid");
}

KnitRequest parse_mode(const std::string& m) {
  if (m == "auto") return KnitRequest::automatic;
  if (m == "exact") return KnitRequest::exact;
  if (m == "sampled") return KnitRequest::sampled;
  if (m == "both") return KnitRequest::both;
  throw ConfigError("knitting.mode must be auto, exact, sampled or both");
}

std::string seed_tag(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

double branch_count(const ack::CutPlan& plan) {
  double n = 1.0;
  for (const auto& q : plan.qpds) n *= static_cast<double>(q.terms.size());
  return n;
}

ack::SchedulingPolicy policy_for(const ExecutorSection& ex, std::span<const ack::TaskSpec> tasks,
                                 std::span<const ack::WorkerModel> workers) {
  if (ex.policy == "big_only" || ex.policy == "lpt") return ack::lpt_policy();
  return ack::width_threshold_policy(ex.threshold ? *ex.threshold : ack::tune_threshold(tasks, workers));
}

}  // namespace

RunConfig parse_run_config(const Json& j, bool strict) {
  Section root(j, "config", strict);
  RunConfig cfg;

  if (const Json* m = root.child("model")) {
    Section s(*m, "model", strict);
    std::string family = ack::family_name(cfg.model.family.kind);
    s.get("family", family);
    try {
      cfg.model.family.kind = ack::parse_family(family);
    } catch (const ack::InvalidArgument& e) {
      throw ConfigError(std::string("model.family: ") + e.what());
    }
    s.get("W", cfg.model.family.W);
    s.get("g", cfg.model.family.g);
    s.get("h", cfg.model.family.h);
    s.get("seeds", cfg.model.seeds);
    if (const Json* c = s.child("center"); c && !c->is_null()) {
      int center = 0;
      s.get("center", center);
      cfg.model.center = center;
    }
    if (const Json* g = s.child("geometry")) cfg.model.geometry = parse_geometry(*g, strict);
    s.finish();
    if (cfg.model.seeds.empty()) throw ConfigError("model.seeds must not be empty");
  }

  if (const Json* e = root.child("evolution")) {
    Section s(*e, "evolution", strict);
    auto& ev = cfg.evolution;
    s.get("dt", ev.dt);
    s.get("steps", ev.steps);
    s.get("chi_max", ev.chi_max);
    s.get("trunc_tol", ev.trunc_tol);
    s.get("order", ev.order);
    s.get("record_every", ev.record_every);
    s.finish();
    if (!(ev.dt > 0)) throw ConfigError("evolution.dt must be positive");
    if (ev.steps < 0) throw ConfigError("evolution.steps must be non-negative");
    if (ev.chi_max < 1) throw ConfigError("evolution.chi_max must be at least 1");
    if (ev.trunc_tol < 0) throw ConfigError("evolution.trunc_tol must be non-negative");
    if (ev.order != 1 && ev.order != 2) throw ConfigError("evolution.order must be 1 or 2");
    if (ev.record_every < 1) throw ConfigError("evolution.record_every must be at least 1");
  }

  if (const Json* a = root.child("ack")) cfg.ack = ack::decode_ack_config(*a, strict);

  if (const Json* k = root.child("knitting")) {
    Section s(*k, "knitting", strict);
    auto& kn = cfg.knitting;
    std::string mode = "auto";
    s.get("mode", mode);
    kn.mode = parse_mode(mode);
    s.get("n_samples", kn.n_samples);
    s.get("n_repetitions", kn.n_repetitions);
    s.get("seed", kn.seed);
    s.get("branch_guard", kn.branch_guard);
    s.get("observable", kn.observable);
    s.finish();
    if (kn.n_samples < 1) throw ConfigError("knitting.n_samples must be at least 1");
    if (kn.n_repetitions < 1) throw ConfigError("knitting.n_repetitions must be at least 1");
  }

  if (const Json* x = root.child("executor")) {
    Section s(*x, "executor", strict);
    auto& ex = cfg.executor;
    s.get("big_workers", ex.big_workers);
    s.get("small_workers", ex.small_workers);
    s.get("policy", ex.policy);
    if (const Json* t = s.child("threshold"); t && !t->is_null()) {
      int threshold = 0;
      s.get("threshold", threshold);
      ex.threshold = threshold;
    }
    s.finish();
    if (ex.big_workers < 0 || ex.small_workers < 0 || ex.big_workers + ex.small_workers == 0)
      throw ConfigError("executor needs at least one worker");
    if (ex.policy != "big_only" && ex.policy != "lpt" && ex.policy != "threshold")
      throw ConfigError("executor.policy must be big_only, lpt or threshold");
    if (ex.policy == "big_only" && ex.big_workers == 0) throw ConfigError("big_only needs big workers");
  }

  if (const Json* o = root.child("outputs")) {
    Section s(*o, "outputs", strict);
    std::string dir = cfg.out_dir.string();
    s.get("dir", dir);
    s.finish();
    cfg.out_dir = dir;
  }

  root.get("threads", cfg.threads);
  root.finish();
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, bool strict) {
  return parse_run_config(ack::read_json(path), strict);
}

void apply(RunConfig& cfg, const Overrides& o) {
  if (o.seed) {
    cfg.knitting.seed = *o.seed;
    for (std::size_t i = 0; i < cfg.model.seeds.size(); ++i) cfg.model.seeds[i] = *o.seed + i;
  }
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.threads) {
    if (*o.threads < 1) throw ConfigError("--threads must be at least 1");
    cfg.threads = *o.threads;
  }
}

ack::DisorderInstance instance_for(const RunConfig& cfg, std::uint64_t seed) {
  return ack::sample_disorder(cfg.model.geometry, cfg.model.family, seed);
}

int center_site(const RunConfig& cfg) {
  const auto& g = cfg.model.geometry;
  int c = g.kind == ack::LatticeKind::grid ? ack::snake_index(g.rows / 2, g.cols / 2, g.cols) : g.n_sites / 2;
  if (cfg.model.center) c = *cfg.model.center;
  if (c < 0 || c >= g.n_sites) throw ConfigError("model.center lies outside the lattice");
  return c;
}

ack::Trajectory evolve_instance(const RunConfig& cfg, std::uint64_t seed) {
  const auto inst = instance_for(cfg, seed);
  const int c = center_site(cfg);
  const auto initial = ack::MatrixProductState::from_product_state(ack::bump_state(inst, c));
  ack::RecordOptions rec;
  rec.every = cfg.evolution.record_every;
  rec.observables.emplace_back("energy_center", ack::energy_density_observable(inst, c));
  rec.snapshot_steps = {cfg.evolution.steps};
  const auto plan = ack::trotter_plan(inst, cfg.evolution.dt, cfg.evolution.order);
  return ack::evolve(initial, plan, cfg.evolution.steps, {cfg.evolution.chi_max, cfg.evolution.trunc_tol}, rec);
}

ack::PauliTermList parse_observable(const std::string& spec, const RunConfig& cfg) {
  if (spec == "energy" || spec.rfind("energy:", 0) == 0) {
    int site = center_site(cfg);
    if (spec.size() > 7) {
      try {
        std::size_t used = 0;
        site = std::stoi(spec.substr(7), &used);
        if (used != spec.size() - 7) throw ConfigError("");
      } catch (const std::exception&) {
        throw ConfigError("bad observable site in '" + spec + "'");
      }
    }
    if (site < 0 || site >= cfg.model.geometry.n_sites) throw ConfigError("observable site outside the lattice");
    return ack::energy_density_observable(instance_for(cfg, cfg.model.seeds.front()), site);
  }

  ack::PauliTermList terms;
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
  };
  const auto fail = [&](const std::string& why) -> ConfigError {
    return ConfigError("observable '" + spec + "': " + why + " at offset " + std::to_string(i));
  };
  double sign = 1.0;
  skip();
  if (i < spec.size() && (spec[i] == '+' || spec[i] == '-')) sign = spec[i++] == '-' ? -1.0 : 1.0;
  while (true) {
    skip();
    double coeff = 1.0;
    if (i < spec.size() && (std::isdigit(static_cast<unsigned char>(spec[i])) || spec[i] == '.')) {
      std::size_t used = 0;
      coeff = std::stod(spec.substr(i), &used);
      i += used;
      skip();
      if (i >= spec.size() || spec[i] != '*') throw fail("expected '*'");
      ++i;
      skip();
    }
    std::vector<std::pair<int, char>> factors;
    while (i < spec.size() && std::string_view("XYZI").find(spec[i]) != std::string_view::npos) {
      const char p = spec[i++];
      if (i >= spec.size() || !std::isdigit(static_cast<unsigned char>(spec[i]))) throw fail("expected a site");
      int site = 0;
      while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) site = 10 * site + (spec[i++] - '0');
      factors.emplace_back(site, p);
    }
    std::set<int> sites;
    for (const auto& [s, p] : factors)
      if (!sites.insert(s).second) throw fail("repeated site");
    terms.push_back({sign * coeff, ack::PauliString(std::move(factors))});
    skip();
    if (i == spec.size()) break;
    if (spec[i] != '+' && spec[i] != '-') throw fail("expected '+' or '-'");
    sign = spec[i++] == '-' ? -1.0 : 1.0;
  }
  return terms;
}

EvolveOutput cmd_evolve(const RunConfig& cfg) {
  const auto& seeds = cfg.model.seeds;
  std::vector<ack::Trajectory> runs(seeds.size());
  ack::parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) { runs[i] = evolve_instance(cfg, seeds[i]); });
  EvolveOutput out;
  const auto dir = cfg.out_dir / "evolve";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto tag = seed_tag(seeds[i]);
    Json j = ack::encode(runs[i], false);
    j["seed"] = seeds[i];
    j["instance"] = ack::encode(instance_for(cfg, seeds[i]));
    j["center"] = center_site(cfg);
    const std::filesystem::path files[] = {dir / ("trajectory_" + tag + ".json"), dir / ("heatmap_" + tag + ".csv"),
                                           dir / ("observables_" + tag + ".csv"), dir / ("state_" + tag + ".json")};
    ack::write_json(files[0], j);
    ack::write_text(files[1], ack::heatmap_csv(runs[i]));
    ack::write_text(files[2], ack::observables_csv(runs[i]));
    ack::write_json(files[3], ack::encode(runs[i].final_state));
    out.files.insert(out.files.end(), std::begin(files), std::end(files));
  }
  return out;
}

ack::AckResult cmd_ack(const RunConfig& cfg, const std::filesystem::path& state_file) {
  const auto state = ack::decode_mps(ack::read_json(state_file));
  auto ack_cfg = cfg.ack;
  ack_cfg.lanes = cfg.threads;
  auto result = ack::run_ack(state, ack_cfg);
  ack::write_json(cfg.out_dir / "ack_result.json", ack::encode(result));
  return result;
}

KnitOutput cmd_knit(const RunConfig& cfg, const std::filesystem::path& ack_file, const std::string& observable) {
  const auto result = ack::decode_ack_result(ack::read_json(ack_file));
  const auto obs = parse_observable(observable, cfg);
  for (const auto& t : obs)
    if (t.string.max_site() >= result.full_circuit.n_qubits)
      throw ConfigError("observable acts outside the " + std::to_string(result.full_circuit.n_qubits) + "-qubit register");
  const auto& kn = cfg.knitting;
  const ack::KnitOptions opts{kn.branch_guard, cfg.threads};
  const double branches = branch_count(result.cut_plan);

  KnitOutput out;
  out.observable = observable;
  const bool exact_fits = branches <= static_cast<double>(kn.branch_guard);
  const bool want_exact = kn.mode == KnitRequest::exact || kn.mode == KnitRequest::both ||
                          (kn.mode == KnitRequest::automatic && exact_fits);
  const bool want_sampled = kn.mode == KnitRequest::sampled || kn.mode == KnitRequest::both ||
                            (kn.mode == KnitRequest::automatic && !exact_fits);
  if (want_exact) {
    try {
      out.estimates.push_back(ack::knit_exact(result.full_circuit, result.cut_plan, obs, opts));
    } catch (const ack::GuardError& e) {
      throw ack::GuardError(std::string(e.what()) + " (knitting.mode = \"sampled\")");
    }
  }
  if (want_sampled)
    out.estimates.push_back(
        ack::knit_sampled(result.full_circuit, result.cut_plan, obs, kn.n_samples, kn.seed, kn.n_repetitions, opts));

  // Modeled schedule of the subcircuit evaluations behind the first estimate.
  const auto& first = out.estimates.front();
  const double evaluations =
      first.mode == ack::KnitMode::exact_enumeration ? branches : static_cast<double>(first.n_samples) * first.n_repetitions;
  std::vector<int> widths;
  for (const auto& c : result.partition_circuits) widths.push_back(c.n_qubits);
  if (widths.empty()) widths.push_back(result.full_circuit.n_qubits);
  Json schedule = {{"policy", cfg.executor.policy}, {"n_tasks", evaluations * widths.size()}};
  constexpr double kMaxScheduledTasks = 1e6;
  if (evaluations * widths.size() <= kMaxScheduledTasks) {
    std::vector<ack::TaskSpec> tasks;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(evaluations); ++b)
      for (int w : widths) tasks.push_back({tasks.size(), std::min(w, ack::kMaxTaskWidth)});
    const auto& ex = cfg.executor;
    const auto workers =
        ack::default_workers(ex.big_workers, ex.policy == "big_only" ? 0 : ex.small_workers);
    out.schedule = policy_for(ex, tasks, workers)(tasks, workers);
    schedule["makespan"] = ack::makespan(out.schedule);
    if (tasks.size() <= 100000) ack::write_text(cfg.out_dir / "schedule.csv", ack::schedule_csv(out.schedule));
  }

  Json estimates = Json::array();
  for (const auto& e : out.estimates) estimates.push_back(ack::encode(e));
  ack::write_json(cfg.out_dir / "knit.json", {{"observable", observable},
                                              {"cuts", result.final_cuts},
                                              {"total_gamma", result.cut_plan.total_gamma},
                                              {"estimates", estimates},
                                              {"schedule", schedule}});
  return out;
}

ack::StrategyComparison cmd_compare(const RunConfig& cfg, bool force_baseline) {
  ack::EnsembleSpec spec;
  spec.geometry = cfg.model.geometry;
  spec.family = cfg.model.family;
  spec.seeds = cfg.model.seeds;
  spec.dt = cfg.evolution.dt;
  spec.t_final = cfg.evolution.dt * cfg.evolution.steps;
  spec.truncation = {cfg.evolution.chi_max, cfg.evolution.trunc_tol};
  const auto targets = ack::bump_ensemble(spec, cfg.threads);
  auto ack_cfg = cfg.ack;
  ack_cfg.lanes = cfg.threads;
  auto cmp = ack::compare_strategies(targets, ack_cfg, force_baseline);
  ack::write_text(cfg.out_dir / "comparison.csv", ack::comparison_csv(cmp));
  Json j = ack::encode(cmp);
  j["seeds"] = cfg.model.seeds;
  ack::write_json(cfg.out_dir / "comparison.json", j);
  return cmp;
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ack::ConfigError*>(&e) || dynamic_cast<const ack::InvalidArgument*>(&e)) return 2;
  if (dynamic_cast<const ack::GuardError*>(&e)) return 3;
  if (dynamic_cast<const ack::VerificationError*>(&e)) return 4;
  return 1;
}

}  // namespace ackc
