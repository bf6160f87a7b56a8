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
#include "ack/knitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ack/error.hpp"
#include "ack/parallel.hpp"
#include "ack/rng.hpp"
#include "ack/statevector.hpp"

namespace ack {
namespace {

constexpr std::uint64_t kSampleStream = 0x6b6e6974;

struct Step {
  bool is_gate = true;
  int site = 0;
  const Mat4* gate = nullptr;
  const Insertion* insertion = nullptr;
};

std::vector<Step> schedule(const StaircaseCircuit& part, std::span<const Insertion> insertions) {
  for (const auto& ins : insertions) {
    ACK_REQUIRE(ins.layer >= 0 && ins.layer < part.order_M, "insertion layer out of range");
    ACK_REQUIRE(ins.qubit >= 0 && ins.qubit < part.n_qubits, "insertion qubit out of range");
    ACK_REQUIRE(!ins.element.outcomes.empty(), "channel element without outcomes");
  }
  std::vector<Step> steps;
  for (int l = 0; l < part.order_M; ++l) {
    for (const auto& ins : insertions)
      if (ins.layer == l && !ins.after_layer) steps.push_back({false, ins.qubit, nullptr, &ins});
    for (int s = 0; s < part.n_bonds(); ++s) steps.push_back({true, s, &part.gate(l, s), nullptr});
    for (const auto& ins : insertions)
      if (ins.layer == l && ins.after_layer) steps.push_back({false, ins.qubit, nullptr, &ins});
  }
  return steps;
}

void descend(Statevector state, const std::vector<Step>& steps, std::size_t at, double sign,
             std::span<const PauliString> strings, std::vector<double>& acc) {
  for (; at < steps.size(); ++at) {
    const Step& st = steps[at];
    if (st.is_gate) {
      const std::array<int, 2> sites = {st.site, st.site + 1};
      sv_apply_inplace(state, *st.gate, sites);
      continue;
    }
    const std::array<int, 1> site = {st.site};
    const auto& outcomes = st.insertion->element.outcomes;
    for (std::size_t o = 0; o + 1 < outcomes.size(); ++o) {
      Statevector branch = state;
      sv_apply_inplace(branch, outcomes[o].op, site);
      descend(std::move(branch), steps, at + 1, sign * outcomes[o].sign, strings, acc);
    }
    sv_apply_inplace(state, outcomes.back().op, site);
    sign *= outcomes.back().sign;
  }
  for (std::size_t k = 0; k < strings.size(); ++k) acc[k] += sign * sv_pauli_expectation(state, strings[k]).real();
}

// Everything knitting needs about one cut plan, resolved once.
class KnitContext {
 public:
  KnitContext(const StaircaseCircuit& full, const CutPlan& plan, const PauliTermList& observable)
      : plan_(plan), observable_(observable) {
    validate(full);
    ACK_REQUIRE(plan.qpds.size() == plan.cut_gates.size(), "plan has mismatched gate and QPD lists");
    int lo = 0;
    for (std::size_t k = 0; k <= plan.cuts.size(); ++k) {
      const int hi = k < plan.cuts.size() ? plan.cuts[k] : full.n_qubits - 1;
      ACK_REQUIRE(hi >= lo && hi < full.n_qubits, "cuts must be increasing interior bonds");
      ranges_.emplace_back(lo, hi);
      lo = hi + 1;
    }
    for (const auto& [a, b] : ranges_) parts_.push_back(slice_circuit(full, a, b));
    for (std::size_t g = 0; g < plan.cut_gates.size(); ++g) {
      const auto& ref = plan.cut_gates[g];
      ACK_REQUIRE(ref.cut >= 0 && ref.cut < static_cast<int>(plan.cuts.size()), "cut index out of range");
      ACK_REQUIRE(ref.bond == plan.cuts[ref.cut], "cut gate bond does not match its cut");
      ACK_REQUIRE((full.gate(ref.layer, ref.bond) - ref.unitary).cwiseAbs().maxCoeff() < 1e-12,
                  "cut gate differs from the circuit gate");
      terms_.push_back(dressed_terms(plan.qpds[g]));
      adjacent_.resize(ranges_.size());
      adjacent_[ref.cut].push_back(static_cast<int>(g));      // side A on the left partition
      adjacent_[ref.cut + 1].push_back(static_cast<int>(g));  // side B on the right partition
    }
    adjacent_.resize(ranges_.size());
    for (const auto& t : observable) {
      std::vector<PauliString> per;
      for (const auto& [a, b] : ranges_) per.push_back(t.string.restrict_to(a, b));
      ACK_REQUIRE(t.string.max_site() < full.n_qubits, "observable outside the register");
      factors_.push_back(std::move(per));
    }
  }

  std::size_t n_parts() const { return parts_.size(); }
  std::size_t n_gates() const { return terms_.size(); }
  const std::vector<QpdTerm>& terms(std::size_t g) const { return terms_[g]; }

  std::uint64_t local_key(std::size_t p, std::span<const int> choice) const {
    std::uint64_t key = 0;
    for (int g : adjacent_[p]) key = key * terms_[g].size() + choice[g];
    return key;
  }
  std::uint64_t n_local_keys(std::size_t p) const {
    std::uint64_t n = 1;
    for (int g : adjacent_[p]) n *= terms_[g].size();
    return n;
  }

  // Weighted traces of every observable factor for one local choice.
  std::vector<double> evaluate(std::size_t p, std::uint64_t key) const {
    std::vector<int> digits(adjacent_[p].size());
    for (std::size_t i = digits.size(); i-- > 0;) {
      const auto r = terms_[adjacent_[p][i]].size();
      digits[i] = static_cast<int>(key % r);
      key /= r;
    }
    std::vector<Insertion> ins;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const int g = adjacent_[p][i];
      const auto& ref = plan_.cut_gates[g];
      const auto& term = terms_[g][digits[i]];
      if (ref.cut == static_cast<int>(p))
        ins.push_back({ref.layer, parts_[p].n_qubits - 1, true, term.a});
      else
        ins.push_back({ref.layer, 0, false, term.b});
    }
    std::vector<PauliString> strings;
    for (const auto& f : factors_) strings.push_back(f[p]);
    return subcircuit_traces(parts_[p], ins, strings);
  }

  double combine(const std::vector<const std::vector<double>*>& tables) const {
    double v = 0.0;
    for (std::size_t t = 0; t < observable_.size(); ++t) {
      double prod = observable_[t].coeff;
      for (const auto* tab : tables) prod *= (*tab)[t];
      v += prod;
    }
    return v;
  }

 private:
  const CutPlan& plan_;
  const PauliTermList& observable_;
  std::vector<std::pair<int, int>> ranges_;
  std::vector<StaircaseCircuit> parts_;
  std::vector<std::vector<QpdTerm>> terms_;
  std::vector<std::vector<int>> adjacent_;
  std::vector<std::vector<PauliString>> factors_;  // [term][partition]
};

double sample_std(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double mean = pairwise_sum(v) / v.size();
  std::vector<double> sq;
  for (double x : v) sq.push_back((x - mean) * (x - mean));
  return std::sqrt(pairwise_sum(sq) / (v.size() - 1));
}

}  // namespace

std::vector<double> subcircuit_traces(const StaircaseCircuit& part, std::span<const Insertion> insertions,
                                      std::span<const PauliString> strings) {
  validate(part);
  for (const auto& s : strings) ACK_REQUIRE(s.max_site() < part.n_qubits, "observable outside the partition");
  const auto steps = schedule(part, insertions);
  std::vector<double> acc(strings.size(), 0.0);
  descend(Statevector::zero(part.n_qubits), steps, 0, 1.0, strings, acc);
  return acc;
}

double subcircuit_eval(const StaircaseCircuit& part, std::span<const Insertion> insertions,
                       const std::optional<PauliTermList>& observable) {
  if (!observable) {
    const std::array<PauliString, 1> id{};
    return subcircuit_traces(part, insertions, id)[0];
  }
  std::vector<PauliString> strings;
  for (const auto& t : *observable) strings.push_back(t.string);
  const auto tr = subcircuit_traces(part, insertions, strings);
  double v = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) v += (*observable)[k].coeff * tr[k];
  return v;
}

KnitEstimate knit_exact(const StaircaseCircuit& full, const CutPlan& plan, const PauliTermList& observable,
                        const KnitOptions& opts) {
  const KnitContext ctx(full, plan, observable);
  BranchEnumerator branches(plan, opts.branch_guard);

  std::vector<std::vector<std::vector<double>>> tables(ctx.n_parts());
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t p = 0; p < ctx.n_parts(); ++p) {
    tables[p].resize(ctx.n_local_keys(p));
    for (std::uint64_t k = 0; k < ctx.n_local_keys(p); ++k) jobs.emplace_back(p, k);
  }
  parallel_for(jobs.size(), opts.lanes, [&](std::size_t i) {
    tables[jobs[i].first][jobs[i].second] = ctx.evaluate(jobs[i].first, jobs[i].second);
  });

  std::vector<double> values;
  values.reserve(branches.size());
  Branch b;
  std::vector<const std::vector<double>*> picked(ctx.n_parts());
  while (branches.next(b)) {
    for (std::size_t p = 0; p < ctx.n_parts(); ++p) picked[p] = &tables[p][ctx.local_key(p, b.choice)];
    values.push_back(b.weight * ctx.combine(picked));
  }
  KnitEstimate est;
  est.value = pairwise_sum(values);
  est.mode = KnitMode::exact_enumeration;
  est.n_branches = values.size();
  est.total_gamma = total_gamma(plan);
  return est;
}

KnitEstimate knit_sampled(const StaircaseCircuit& full, const CutPlan& plan, const PauliTermList& observable,
                          std::uint64_t n_samples, std::uint64_t seed, int n_repetitions,
                          const KnitOptions& opts) {
  ACK_REQUIRE(n_samples >= 1, "n_samples must be at least 1");
  ACK_REQUIRE(n_repetitions >= 1, "n_repetitions must be at least 1");
  const KnitContext ctx(full, plan, observable);
  const double gamma = total_gamma(plan);
  const std::size_t n_gates = ctx.n_gates();

  // Cumulative |c| / gamma per gate for inverse-CDF draws.
  std::vector<std::vector<double>> cdf(n_gates);
  for (std::size_t g = 0; g < n_gates; ++g) {
    double run = 0.0;
    for (const auto& t : ctx.terms(g)) cdf[g].push_back(run += std::abs(t.coeff));
    for (double& c : cdf[g]) c /= run;
  }

  const std::uint64_t total = n_samples * static_cast<std::uint64_t>(n_repetitions);
  std::vector<std::vector<std::uint64_t>> keys(ctx.n_parts(), std::vector<std::uint64_t>(total));
  std::vector<double> signs(total);
  std::vector<int> choice(n_gates);
  for (int r = 0; r < n_repetitions; ++r) {
    StreamRng rng(seed, kSampleStream + static_cast<std::uint64_t>(r));
    for (std::uint64_t s = 0; s < n_samples; ++s) {
      double sign = 1.0;
      for (std::size_t g = 0; g < n_gates; ++g) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf[g].begin(), cdf[g].end(), u);
        choice[g] = static_cast<int>(std::min<std::ptrdiff_t>(it - cdf[g].begin(), cdf[g].size() - 1));
        if (ctx.terms(g)[choice[g]].coeff < 0) sign = -sign;
      }
      const std::uint64_t i = r * n_samples + s;
      signs[i] = sign;
      for (std::size_t p = 0; p < ctx.n_parts(); ++p) keys[p][i] = ctx.local_key(p, choice);
    }
  }

  std::vector<std::map<std::uint64_t, std::vector<double>>> tables(ctx.n_parts());
  std::vector<std::pair<std::size_t, std::vector<double>*>> jobs;
  std::vector<std::uint64_t> job_keys;
  for (std::size_t p = 0; p < ctx.n_parts(); ++p) {
    for (std::uint64_t k : keys[p]) tables[p].try_emplace(k);
    for (auto& [k, v] : tables[p]) {
      jobs.emplace_back(p, &v);
      job_keys.push_back(k);
    }
  }
  parallel_for(jobs.size(), opts.lanes,
               [&](std::size_t i) { *jobs[i].second = ctx.evaluate(jobs[i].first, job_keys[i]); });

  std::vector<double> rep_means;
  std::vector<double> values(n_samples);
  std::vector<const std::vector<double>*> picked(ctx.n_parts());
  for (int r = 0; r < n_repetitions; ++r) {
    for (std::uint64_t s = 0; s < n_samples; ++s) {
      const std::uint64_t i = r * n_samples + s;
      for (std::size_t p = 0; p < ctx.n_parts(); ++p) picked[p] = &tables[p].at(keys[p][i]);
      values[s] = gamma * signs[i] * ctx.combine(picked);
    }
    rep_means.push_back(pairwise_sum(values) / static_cast<double>(n_samples));
  }

  KnitEstimate est;
  est.mode = KnitMode::monte_carlo;
  est.n_samples = n_samples;
  est.n_repetitions = n_repetitions;
  est.seed = seed;
  est.total_gamma = gamma;
  est.value = pairwise_sum(rep_means) / n_repetitions;
  est.std_error = n_repetitions >= 2 ? sample_std(rep_means)
                                     : sample_std(values) / std::sqrt(static_cast<double>(n_samples));
  return est;
}

}  // namespace ack
