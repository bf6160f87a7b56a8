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
#include "ack/qpd.hpp"

#include <cmath>
#include <numbers>

#include "ack/error.hpp"
#include "ack/kak.hpp"

namespace ack {
namespace {

using SuperOp = Eigen::Matrix<cplx, 16, 16>;

Mat2 s_plus() {
  const double r = std::numbers::sqrt2 / 2;
  return Eigen::Vector2cd(cplx(r, r), cplx(r, -r)).asDiagonal();
}

ChannelElement unitary_element(std::string label, const Mat2& u) {
  return {Side::A, std::move(label), {{1.0, u}}};
}

ChannelElement measure_element() {
  Mat2 p0 = Mat2::Zero(), p1 = Mat2::Zero();
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return {Side::A, "Mz", {{1.0, p0}, {-1.0, p1}}};
}

// Row-major vectorisation: vec(K rho K^dag) = (K (x) conj K) vec(rho).
SuperOp superop(const ChannelElement& a, const ChannelElement& b) {
  SuperOp s = SuperOp::Zero();
  for (const auto& oa : a.outcomes)
    for (const auto& ob : b.outcomes) {
      const Mat4 k = kron(oa.op, ob.op);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s.block<4, 4>(4 * i, 4 * j) += oa.sign * ob.sign * k(i, j) * k.conjugate();
    }
  return s;
}

SuperOp unitary_superop(const Mat4& u) {
  SuperOp s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s.block<4, 4>(4 * i, 4 * j) = u(i, j) * u.conjugate();
  return s;
}

ChannelElement conjugated(const ChannelElement& e, const Mat2& v) {
  ChannelElement out = e;
  for (auto& o : out.outcomes) o.op = v * o.op * v.adjoint();
  return out;
}

ChannelElement compose(const ChannelElement& later, const ChannelElement& earlier) {
  if (earlier.label == "I") return later;
  if (later.label == "I") return earlier;
  ChannelElement out{later.side, later.label + "*" + earlier.label, {}};
  for (const auto& ol : later.outcomes)
    for (const auto& oe : earlier.outcomes) out.outcomes.push_back({ol.sign * oe.sign, ol.op * oe.op});
  return out;
}

GateQPD conjugate_axis(GateQPD q, const Mat2& v, char axis) {
  for (auto& t : q.terms) {
    t.a = conjugated(t.a, v);
    t.b = conjugated(t.b, v);
    for (auto* e : {&t.a, &t.b})
      if (e->label != "I") e->label += std::string("@") + axis;
  }
  return q;
}

GateQPD compose(const GateQPD& later, const GateQPD& earlier) {
  GateQPD out;
  for (const auto& tl : later.terms)
    for (const auto& te : earlier.terms)
      out.terms.push_back({tl.coeff * te.coeff, compose(tl.a, te.a), compose(tl.b, te.b)});
  out.gamma = later.gamma * earlier.gamma;
  return out;
}

ChannelElement dressed(const ChannelElement& e, const Mat2& pre, const Mat2& post) {
  ChannelElement out = e;
  for (auto& o : out.outcomes) o.op = post * o.op * pre;
  return out;
}

}  // namespace

GateQPD qpd_zz(double theta) {
  ACK_REQUIRE(std::isfinite(theta), "angle must be finite");
  const Mat2 id = Mat2::Identity(), z = pauli('Z'), sp = s_plus(), sm = sp.adjoint();
  const std::vector<std::pair<ChannelElement, ChannelElement>> basis = {
      {unitary_element("I", id), unitary_element("I", id)},
      {unitary_element("Z", z), unitary_element("Z", z)},
      {measure_element(), unitary_element("S+", sp)},
      {measure_element(), unitary_element("S-", sm)},
      {unitary_element("S+", sp), measure_element()},
      {unitary_element("S-", sm), measure_element()},
  };
  const SuperOp target = unitary_superop(pauli_rotation(PauliPair::ZZ, theta));
  Eigen::MatrixXd lhs(512, basis.size());
  Eigen::VectorXd rhs(512);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const SuperOp s = superop(basis[k].first, basis[k].second);
    for (int i = 0; i < 256; ++i) {
      lhs(i, k) = s(i / 16, i % 16).real();
      lhs(256 + i, k) = s(i / 16, i % 16).imag();
    }
  }
  for (int i = 0; i < 256; ++i) {
    rhs(i) = target(i / 16, i % 16).real();
    rhs(256 + i) = target(i / 16, i % 16).imag();
  }
  const Eigen::VectorXd c = lhs.colPivHouseholderQr().solve(rhs);
  const double residual = (lhs * c - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-10) throw VerificationError("ZZ decomposition does not close the channel identity");

  GateQPD q;
  q.source_gate = pauli_rotation(PauliPair::ZZ, theta);
  q.angles = {0.0, 0.0, theta};
  q.gamma = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (std::abs(c(k)) <= 1e-14) continue;
    QpdTerm t{c(k), basis[k].first, basis[k].second};
    t.a.side = Side::A;
    t.b.side = Side::B;
    q.terms.push_back(std::move(t));
    q.gamma += std::abs(c(k));
  }
  // Measure-and-prepare terms carry |sin 2 theta| / 2 each.
  const double s2 = std::abs(std::sin(2.0 * theta));
  const double expected = s2 / 2.0 <= 1e-14 ? 1.0 : 1.0 + 2.0 * s2;
  if (std::abs(q.gamma - expected) > 1e-10)
    throw VerificationError("ZZ decomposition has unexpected 1-norm");
  q.gamma = expected;
  return q;
}

GateQPD gate_qpd(const Mat4& u) {
  ACK_REQUIRE(is_unitary(u, 1e-10), "gate_qpd needs a unitary");
  const KakDecomposition kak = kak_decompose(u);
  const Mat2 h = gates::hadamard();
  const Mat2 v = gates::phase_s() * h;  // v Z v^dag = Y
  const GateQPD gx = conjugate_axis(qpd_zz(kak.theta_x), h, 'X');
  const GateQPD gy = conjugate_axis(qpd_zz(kak.theta_y), v, 'Y');
  const GateQPD gz = qpd_zz(kak.theta_z);
  GateQPD q = compose(gx, compose(gy, gz));
  q.source_gate = u;
  q.dressing = {kak.pre_a, kak.pre_b, kak.post_a, kak.post_b};
  q.angles = {kak.theta_x, kak.theta_y, kak.theta_z};
  return q;
}

std::vector<QpdTerm> dressed_terms(const GateQPD& q) {
  std::vector<QpdTerm> out;
  out.reserve(q.terms.size());
  for (const auto& t : q.terms)
    out.push_back({t.coeff, dressed(t.a, q.dressing.pre_a, q.dressing.post_a),
                   dressed(t.b, q.dressing.pre_b, q.dressing.post_b)});
  return out;
}

double verify_qpd(const GateQPD& q) {
  const auto terms = dressed_terms(q);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat4 rho = Mat4::Zero();
      rho(i, j) = 1.0;
      Mat4 acc = Mat4::Zero();
      cplx trace = 0.0;
      for (const auto& t : terms)
        for (const auto& oa : t.a.outcomes)
          for (const auto& ob : t.b.outcomes) {
            const Mat4 k = kron(oa.op, ob.op);
            const Mat4 out = k * rho * k.adjoint();
            const double w = t.coeff * oa.sign * ob.sign;
            acc += w * out;
            trace += w * out.trace();
          }
      const Mat4 expect = q.source_gate * rho * q.source_gate.adjoint();
      worst = std::max(worst, (acc - expect).norm());
      worst = std::max(worst, std::abs(trace - rho.trace()));
    }
  return worst;
}

CutPlan make_cut_plan(const StaircaseCircuit& full, std::span<const int> cuts) {
  validate(full);
  CutPlan plan;
  plan.cuts.assign(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    ACK_REQUIRE(cuts[k] >= 0 && cuts[k] < full.n_bonds(), "cut bond out of range");
    ACK_REQUIRE(k == 0 || cuts[k] > cuts[k - 1], "cuts must be strictly increasing");
    for (int l = 0; l < full.order_M; ++l) {
      plan.cut_gates.push_back({static_cast<int>(k), l, cuts[k], full.gate(l, cuts[k])});
      plan.qpds.push_back(gate_qpd(full.gate(l, cuts[k])));
    }
  }
  plan.total_gamma = total_gamma(plan);
  return plan;
}

double total_gamma(const CutPlan& plan) {
  double g = 1.0;
  for (const auto& q : plan.qpds) g *= q.gamma;
  return g;
}

BranchEnumerator::BranchEnumerator(const CutPlan& plan, std::uint64_t guard) : plan_(&plan) {
  for (const auto& q : plan.qpds) {
    radix_.push_back(static_cast<int>(q.terms.size()));
    if (static_cast<double>(size_) * radix_.back() > static_cast<double>(guard))
      throw GuardError("branch count exceeds the guard of " + std::to_string(guard) +
                       "; use monte_carlo mode instead");
    size_ *= radix_.back();
  }
  digits_.assign(radix_.size(), 0);
}

bool BranchEnumerator::next(Branch& out) {
  if (emitted_ == size_) return false;
  out.choice = digits_;
  out.weight = 1.0;
  for (std::size_t g = 0; g < digits_.size(); ++g) out.weight *= plan_->qpds[g].terms[digits_[g]].coeff;
  ++emitted_;
  // Last gate varies fastest.
  for (std::size_t g = digits_.size(); g-- > 0;) {
    if (++digits_[g] < radix_[g]) break;
    digits_[g] = 0;
  }
  return true;
}

}  // namespace ack
