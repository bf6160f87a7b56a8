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
#include "ack/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ack/error.hpp"
#include "ack/parallel.hpp"
#include "ack/rng.hpp"

namespace ack {
namespace {

constexpr std::uint64_t kInitStream = 0x5c1a;

Mat4 near_identity(StreamRng& rng, double scale) {
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  return polar_update(Mat4::Identity() + scale * g);
}

// Column transfer picture of <target| U |0>. Gate (l, j) is split across
// its bond as sum over k = 2o + i of |o><i| (x) B_k, where
// B_k(o', i') = G(2o + o', 2i + i'). The split leg of every layer crossing
// a cut forms a bond of size 4^M, layer 0 least significant. Column j then
// is a tensor C_j[s](k_in, k_out) with s the output qubit of the last layer.
class ColumnNetwork {
 public:
  ColumnNetwork(const StaircaseCircuit& circ, const MatrixProductState& target)
      : circ_(circ), target_(target), n_(circ.n_qubits), m_(circ.order_M), k_(1 << (2 * m_)),
        left_(n_ + 1), right_(n_ + 1) {
    left_[0] = right_[n_] = ComplexMatrix::Ones(1, 1);
    for (int j = n_ - 1; j >= 1; --j) extend_right(j);
  }

  // One pass over all bonds, updating every non-frozen gate once. Returns
  // the overlap <target|U|0> after the pass.
  cplx sweep(bool left_to_right, const std::vector<bool>& frozen) {
    cplx w = 0.0;
    for (int step = 0; step + 1 < n_; ++step) {
      const int j = left_to_right ? step : n_ - 2 - step;
      if (left_to_right) extend_left(j);
      else if (j + 2 < n_) extend_right(j + 2);
      std::array<ComplexMatrix, 2> p;
      for (int s = 0; s < 2; ++s)
        p[s] = left_[j + 1].transpose() * target_.site(j + 1)[s].conjugate() * right_[j + 2];
      if (!frozen[j])
        for (int l = 0; l < m_; ++l) circ_.gate(l, j) = polar_update(gate_environment(p, j + 1, l));
      const auto c = column(j + 1);
      w = p[0].cwiseProduct(c[0]).sum() + p[1].cwiseProduct(c[1]).sum();
    }
    return w;
  }

  const StaircaseCircuit& circuit() const { return circ_; }

 private:
  int k_in(int j) const { return j > 0 ? k_ : 1; }
  int k_out(int j) const { return j + 1 < n_ ? k_ : 1; }
  // Visits every nonzero term of column j. The leaf receives k_in, the k_out
  // index (0 without a right bond), the output s, the product of all layer
  // factors except layer `skip`, and that layer's gate indices (a, b).
  template <class Leaf>
  void walk(int j, int skip, Leaf&& leaf) const {
    std::vector<std::array<cplx, 16>> tab(m_);
    for (int q = 0; q < m_; ++q)
      for (int kq = 0; kq < 4; ++kq)
        for (int i = 0; i < 2; ++i)
          for (int op = 0; op < 2; ++op)
            tab[q][4 * kq + 2 * i + op] = j == 0 ? cplx(kq == 0 && i == op ? 1.0 : 0.0)
                                                 : circ_.gate(q, j - 1)(2 * (kq >> 1) + i, 2 * (kq & 1) + op);
    const int nk = j > 0 ? 4 : 1;
    const bool has_right = j + 1 < n_;
    auto rec = [&](auto& self, int q, int kin, int col, int oprev, cplx v, int a, int b) -> void {
      if (q == m_) {
        leaf(kin, col, oprev, v, a, b);
        return;
      }
      for (int kq = 0; kq < nk; ++kq)
        for (int i = 0; i < 2; ++i) {
          const cplx f = q == skip ? cplx(1.0) : tab[q][4 * kq + 2 * i + oprev];
          if (f == 0.0) continue;
          const int na = q == skip ? 2 * (kq >> 1) + i : a;
          const int nb = q == skip ? 2 * (kq & 1) + oprev : b;
          const int nkin = kin | kq << (2 * q);
          if (!has_right) {
            self(self, q + 1, nkin, 0, i, v * f, na, nb);
            continue;
          }
          for (int o = 0; o < 2; ++o) self(self, q + 1, nkin, col | (2 * o + i) << (2 * q), o, v * f, na, nb);
        }
    };
    rec(rec, 0, 0, 0, 0, cplx(1.0), 0, 0);
  }

  std::array<ComplexMatrix, 2> column(int j) const {
    std::array<ComplexMatrix, 2> c;
    for (auto& x : c) x = ComplexMatrix::Zero(k_in(j), k_out(j));
    walk(j, -1, [&](int kin, int col, int s, cplx v, int, int) { c[s](kin, col) += v; });
    return c;
  }

  // conj of d<target|U|0> / dG for gate (l, j - 1), given the contraction p
  // of everything outside column j.
  Mat4 gate_environment(const std::array<ComplexMatrix, 2>& p, int j, int l) const {
    Mat4 e = Mat4::Zero();
    walk(j, l, [&](int kin, int col, int s, cplx v, int a, int b) { e(a, b) += p[s](kin, col) * v; });
    return e.conjugate();
  }

  void extend_left(int j) {
    const auto c = column(j);
    const auto& t = target_.site(j);
    left_[j + 1] = t[0].adjoint() * left_[j] * c[0] + t[1].adjoint() * left_[j] * c[1];
  }
  void extend_right(int j) {
    const auto c = column(j);
    const auto& t = target_.site(j);
    right_[j] = t[0].conjugate() * right_[j + 1] * c[0].transpose() +
                t[1].conjugate() * right_[j + 1] * c[1].transpose();
  }

  StaircaseCircuit circ_;
  const MatrixProductState& target_;
  int n_, m_, k_;
  std::vector<ComplexMatrix> left_, right_;
};

// Unitary whose columns 2a (a < k) are the given orthonormal vectors. The
// other columns follow the reference w (x) I, with w fitted to the given
// columns, so that product targets yield product gates.
Mat4 complete_columns(const std::vector<Eigen::Vector4cd>& cols) {
  const int k = static_cast<int>(cols.size());
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> given(4, k);
  for (int a = 0; a < k; ++a) given.col(a) = cols[a];
  const Mat4 q = Eigen::HouseholderQR<Eigen::Matrix<cplx, 4, Eigen::Dynamic>>(given).householderQ();
  const ComplexMatrix basis = q.rightCols(4 - k);

  Mat2 f = Mat2::Zero();
  for (int a = 0; a < k; ++a)
    for (int s = 0; s < 2; ++s) f(s, a) = cols[a](2 * s);
  const Mat4 ref = kron(Mat2(polar_update(f)), Mat2::Identity());

  std::vector<int> rest;
  for (int c = 0; c < 4; ++c)
    if (!(c % 2 == 0 && c / 2 < k)) rest.push_back(c);
  ComplexMatrix m(4 - k, 4 - k);
  for (int i = 0; i < 4 - k; ++i) m.row(i) = ref.col(rest[i]).adjoint() * basis;
  const ComplexMatrix fill = basis * polar_update(m).adjoint();
  Mat4 g;
  for (int a = 0; a < k; ++a) g.col(2 * a) = cols[a];
  for (int i = 0; i < 4 - k; ++i) g.col(rest[i]) = fill.col(i);
  return g;
}

// One staircase layer preparing a normalized state of bond dimension <= 2.
std::vector<Mat4> layer_from_state(MatrixProductState psi) {
  const int n = psi.n_sites();
  psi.canonicalize(0);
  std::vector<Mat4> layer;
  for (int j = 0; j + 1 < n; ++j) {
    const auto& a = psi.site(j);
    const bool last = j + 2 == n;
    std::array<ComplexMatrix, 4> block;  // index 2s + b (or 2s + t on the last pair)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) {
        if (last)
          block[2 * s + t] = a[s] * psi.site(j + 1)[t];
        else if (t < a[s].cols())
          block[2 * s + t] = a[s].col(t);
        else
          block[2 * s + t] = ComplexMatrix::Zero(a[s].rows(), 1);
      }
    std::vector<Eigen::Vector4cd> cols;
    for (int in = 0; in < a[0].rows(); ++in) {
      Eigen::Vector4cd v;
      for (int k = 0; k < 4; ++k) v(k) = block[k](in, 0);
      cols.push_back(v);
    }
    layer.push_back(complete_columns(cols));
  }
  return layer;
}

}  // namespace

StaircaseCircuit circuit_from_target(const MatrixProductState& target, int order_M) {
  const int n = target.n_sites();
  StaircaseCircuit circ = init_circuit(n, order_M, CircuitInit::identity);
  ACK_REQUIRE(target.normalized(), "target must be normalized");
  MatrixProductState rest = target;
  for (int k = 0; k < order_M; ++k) {
    MatrixProductState two = rest;
    two.canonicalize(0);
    for (int j = 0; j + 1 < n; ++j) two.apply_two_site(Mat4::Identity(), j, Truncation{2, 0.0});
    const auto layer = layer_from_state(two);
    // Peeled layers are applied last, so they fill the circuit from the top.
    const int l = order_M - 1 - k;
    for (int j = 0; j + 1 < n; ++j) circ.gate(l, j) = layer[j];
    if (k + 1 < order_M)
      for (int j = n - 2; j >= 0; --j) rest.apply_two_site(layer[j].adjoint(), j, Truncation{1 << 20, 1e-14});
  }
  return circ;
}

void validate(const StaircaseCircuit& circ) {
  ACK_REQUIRE(circ.n_qubits >= 1 && circ.order_M >= 1, "circuit needs n >= 1 and M >= 1");
  ACK_REQUIRE(circ.gates.size() == static_cast<std::size_t>(circ.order_M * circ.n_bonds()),
              "gate count must be M * (n - 1)");
  for (std::size_t i = 0; i < circ.gates.size(); ++i) {
    const auto& g = circ.gates[i];
    ACK_REQUIRE(g.layer == static_cast<int>(i) / circ.n_bonds() &&
                    g.site == static_cast<int>(i) % circ.n_bonds(),
                "gates must be stored layer-major with ascending bonds");
    ACK_REQUIRE(is_unitary(g.unitary, 1e-10), "circuit gate is not unitary");
  }
}

StaircaseCircuit init_circuit(int n_qubits, int order_M, CircuitInit init, std::uint64_t seed,
                              double perturbation) {
  ACK_REQUIRE(n_qubits >= 2, "staircase needs at least two qubits");
  ACK_REQUIRE(order_M >= 1, "order must be at least 1");
  StaircaseCircuit c;
  c.n_qubits = n_qubits;
  c.order_M = order_M;
  StreamRng rng(seed, kInitStream);
  for (int l = 0; l < order_M; ++l)
    for (int s = 0; s + 1 < n_qubits; ++s) {
      CircuitGate g{l, s, Mat4::Identity()};
      if (init == CircuitInit::seeded_random) g.unitary = haar_unitary(4, rng);
      if (init == CircuitInit::perturbed_identity) g.unitary = near_identity(rng, perturbation);
      c.gates.push_back(g);
    }
  return c;
}

MatrixProductState circuit_to_mps(const StaircaseCircuit& circ, std::optional<Truncation> cap) {
  auto m = MatrixProductState::zero_state(circ.n_qubits);
  const Truncation trunc = cap.value_or(Truncation{1 << 20, 0.0});
  for (const auto& g : circ.gates) m.apply_two_site(g.unitary, g.site, trunc);
  return m;
}

double fidelity(const StaircaseCircuit& circ, const MatrixProductState& target) {
  ACK_REQUIRE(circ.n_qubits == target.n_sites(), "circuit and target sizes differ");
  return std::norm(overlap(circuit_to_mps(circ), target));
}

std::pair<StaircaseCircuit, CompressionReport> optimize(StaircaseCircuit circ,
                                                        const MatrixProductState& target,
                                                        const OptimizeOptions& opts) {
  ACK_REQUIRE(circ.n_qubits == target.n_sites(), "circuit and target sizes differ");
  ACK_REQUIRE(target.normalized(), "target must be normalized");
  ACK_REQUIRE(opts.max_sweeps >= 0, "max_sweeps must be non-negative");
  validate(circ);
  std::vector<bool> frozen(circ.n_bonds(), false);
  for (int b : opts.frozen_bonds) {
    ACK_REQUIRE(b >= 0 && b < circ.n_bonds(), "frozen bond out of range");
    frozen[b] = true;
  }

  CompressionReport report;
  double f = fidelity(circ, target);
  report.fidelity_trace.push_back(f);
  if (f >= 1.0 - 1e-14) report.converged = true;

  ColumnNetwork net(circ, target);
  while (!report.converged && report.sweeps_used < opts.max_sweeps) {
    const cplx ov = net.sweep(report.sweeps_used % 2 == 0, frozen);
    const double f_new = std::min(1.0, std::norm(ov));
    ++report.sweeps_used;
    report.fidelity_trace.push_back(f_new);
    const double gain = f_new - f;
    f = f_new;
    if (gain <= opts.rel_tol * std::max(f, 1e-300) || f >= 1.0 - 1e-14) report.converged = true;
  }
  report.final_fidelity = f;
  return {net.circuit(), std::move(report)};
}

std::pair<StaircaseCircuit, CompressionReport> compress(const MatrixProductState& target, int order_M,
                                                        const CompressOptions& opts) {
  ACK_REQUIRE(opts.n_starts >= 1 && opts.n_polish >= 1, "compress needs at least one start");
  const int n = target.n_sites();
  std::vector<std::pair<StaircaseCircuit, CompressionReport>> runs(opts.n_starts);
  parallel_for(runs.size(), opts.lanes, [&](std::size_t i) {
    const std::uint64_t s = opts.seed + i;
    const StaircaseCircuit init = i == 0       ? circuit_from_target(target, order_M)
                                  : i % 2 == 1 ? init_circuit(n, order_M, CircuitInit::perturbed_identity, s)
                                               : init_circuit(n, order_M, CircuitInit::seeded_random, s);
    runs[i] = optimize(init, target, {opts.screen_sweeps, 0.0, {}});
  });
  std::stable_sort(runs.begin(), runs.end(),
                   [](const auto& a, const auto& b) { return a.second.final_fidelity > b.second.final_fidelity; });
  runs.resize(std::min<std::size_t>(runs.size(), opts.n_polish));

  std::pair<StaircaseCircuit, CompressionReport> best;
  best.second.final_fidelity = -1.0;
  for (const auto& [start, screen] : runs) {
    if (best.second.final_fidelity >= 1.0 - 1e-12) break;
    auto [circ, rep] = optimize(start, target, opts.polish);
    if (rep.final_fidelity <= best.second.final_fidelity) continue;
    CompressionReport merged = screen;
    merged.fidelity_trace.insert(merged.fidelity_trace.end(), rep.fidelity_trace.begin() + 1,
                                 rep.fidelity_trace.end());
    merged.final_fidelity = rep.final_fidelity;
    merged.sweeps_used += rep.sweeps_used;
    merged.converged = rep.converged;
    best = {std::move(circ), std::move(merged)};
  }
  return best;
}

StaircaseCircuit slice_circuit(const StaircaseCircuit& full, int lo, int hi) {
  ACK_REQUIRE(lo >= 0 && lo <= hi && hi < full.n_qubits, "slice out of range");
  StaircaseCircuit c;
  c.n_qubits = hi - lo + 1;
  c.order_M = full.order_M;
  for (int l = 0; l < full.order_M; ++l)
    for (int s = lo; s < hi; ++s) c.gates.push_back({l, s - lo, full.gate(l, s)});
  return c;
}

StaircaseCircuit assemble_full_circuit(std::span<const StaircaseCircuit> partitions,
                                       const std::vector<std::vector<Mat4>>& boundary_gates,
                                       std::span<const int> cuts) {
  ACK_REQUIRE(!partitions.empty(), "no partitions");
  ACK_REQUIRE(partitions.size() == cuts.size() + 1, "need one more partition than cuts");
  ACK_REQUIRE(boundary_gates.size() == cuts.size(), "need one boundary gate list per cut");
  const int m = partitions.front().order_M;
  int start = 0;
  std::vector<int> offsets;
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    ACK_REQUIRE(partitions[p].order_M == m, "partition orders differ");
    offsets.push_back(start);
    start += partitions[p].n_qubits;
    if (p < cuts.size())
      ACK_REQUIRE(cuts[p] == start - 1, "cut position inconsistent with partition sizes");
  }
  for (const auto& b : boundary_gates)
    ACK_REQUIRE(static_cast<int>(b.size()) == m, "need exactly M boundary gates per cut");

  StaircaseCircuit full;
  full.n_qubits = start;
  full.order_M = m;
  ACK_REQUIRE(full.n_qubits >= 2, "assembled circuit needs two qubits");
  for (int l = 0; l < m; ++l) {
    std::size_t p = 0;
    for (int s = 0; s + 1 < full.n_qubits; ++s) {
      while (p + 1 < partitions.size() && s >= offsets[p + 1]) ++p;
      const auto cut = std::find(cuts.begin(), cuts.end(), s);
      if (cut != cuts.end())
        full.gates.push_back({l, s, boundary_gates[cut - cuts.begin()][l]});
      else
        full.gates.push_back({l, s, partitions[p].gate(l, s - offsets[p])});
    }
  }
  validate(full);
  return full;
}

}  // namespace ack
