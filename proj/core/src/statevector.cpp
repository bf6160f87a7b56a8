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
#include "ack/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ack/error.hpp"

namespace ack {

PauliString::PauliString(std::vector<std::pair<int, char>> factors) {
  for (auto& [site, label] : factors) {
    ACK_REQUIRE(site >= 0, "PauliString: negative site");
    ACK_REQUIRE(label == 'I' || label == 'X' || label == 'Y' || label == 'Z',
                "PauliString: label must be one of I, X, Y, Z");
    if (label != 'I') factors_.emplace_back(site, label);
  }
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 1; i < factors_.size(); ++i)
    ACK_REQUIRE(factors_[i].first != factors_[i - 1].first,
                "PauliString: repeated site");
}

PauliString PauliString::dense(std::string_view labels, int offset) {
  std::vector<std::pair<int, char>> f;
  for (std::size_t k = 0; k < labels.size(); ++k)
    f.emplace_back(offset + static_cast<int>(k), labels[k]);
  return PauliString(std::move(f));
}

char PauliString::at(int site) const {
  for (const auto& [s, l] : factors_)
    if (s == site) return l;
  return 'I';
}

PauliString PauliString::restrict_to(int lo, int hi) const {
  PauliString out;
  for (const auto& [s, l] : factors_)
    if (s >= lo && s <= hi) out.factors_.emplace_back(s - lo, l);
  return out;
}

std::string PauliString::str() const {
  if (factors_.empty()) return "I";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ' ';
    os << factors_[i].second << factors_[i].first;
  }
  return os.str();
}

Statevector Statevector::zero(int n_qubits) {
  ACK_REQUIRE(n_qubits >= 1, "Statevector: need at least one qubit");
  if (n_qubits > kMaxStatevectorQubits)
    throw GuardError("Statevector: " + std::to_string(n_qubits) +
                     " qubits exceeds the limit of " +
                     std::to_string(kMaxStatevectorQubits));
  Statevector s;
  s.n_qubits = n_qubits;
  s.amplitudes = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  s.amplitudes(0) = 1.0;
  return s;
}

Statevector Statevector::product(std::span<const Eigen::Vector2cd> locals) {
  const int n = static_cast<int>(locals.size());
  Statevector s = zero(n);
  ComplexVector v(1);
  v(0) = 1.0;
  for (const auto& l : locals) {
    ACK_REQUIRE(std::abs(l.squaredNorm() - 1.0) < 1e-10,
                "Statevector::product: local vector not normalized");
    ComplexVector w(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      w(2 * i) = v(i) * l(0);
      w(2 * i + 1) = v(i) * l(1);
    }
    v = std::move(w);
  }
  s.amplitudes = std::move(v);
  return s;
}

void sv_apply_inplace(Statevector& state, const ComplexMatrix& op,
                      std::span<const int> sites) {
  const int k = static_cast<int>(sites.size());
  const int n = state.n_qubits;
  ACK_REQUIRE(k >= 1, "sv_apply: no sites");
  ACK_REQUIRE(op.rows() == (Eigen::Index{1} << k) && op.cols() == op.rows(),
              "sv_apply: operator dimension does not match site count");
  std::vector<std::size_t> bit(k);
  std::size_t mask = 0;
  for (int a = 0; a < k; ++a) {
    ACK_REQUIRE(sites[a] >= 0 && sites[a] < n, "sv_apply: site out of range");
    bit[a] = std::size_t{1} << (n - 1 - sites[a]);
    ACK_REQUIRE((mask & bit[a]) == 0, "sv_apply: repeated site");
    mask |= bit[a];
  }
  const std::size_t dim = std::size_t{1} << k;
  std::vector<std::size_t> offset(dim, 0);
  for (std::size_t m = 0; m < dim; ++m)
    for (int a = 0; a < k; ++a)
      if (m & (std::size_t{1} << (k - 1 - a))) offset[m] |= bit[a];

  ComplexVector in(dim), out(dim);
  const std::size_t total = static_cast<std::size_t>(state.amplitudes.size());
  auto& amp = state.amplitudes;
  for (std::size_t base = 0; base < total; ++base) {
    if (base & mask) continue;
    for (std::size_t m = 0; m < dim; ++m) in(m) = amp(base | offset[m]);
    out.noalias() = op * in;
    for (std::size_t m = 0; m < dim; ++m) amp(base | offset[m]) = out(m);
  }
  if (!is_unitary(op, 1e-10)) state.normalized = false;
}

Statevector sv_apply(const Statevector& state, const ComplexMatrix& op,
                     std::span<const int> sites) {
  Statevector out = state;
  sv_apply_inplace(out, op, sites);
  return out;
}

cplx sv_pauli_expectation(const Statevector& state, const PauliString& p) {
  const int n = state.n_qubits;
  if (p.max_site() >= n)
    throw InvalidArgument("sv_expectation: Pauli string longer than register");
  std::size_t xmask = 0, zmask = 0;
  int n_y = 0;
  for (const auto& [site, label] : p.factors()) {
    const std::size_t b = std::size_t{1} << (n - 1 - site);
    if (label == 'X' || label == 'Y') xmask |= b;
    if (label == 'Z' || label == 'Y') zmask |= b;
    if (label == 'Y') ++n_y;
  }
  // P|i> = i^{n_y} (-1)^{popcount(i & zmask)} |i ^ xmask>, with Y = i X Z.
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx yphase = kIPow[n_y % 4];
  const auto& amp = state.amplitudes;
  cplx acc = 0.0;
  const std::size_t total = static_cast<std::size_t>(amp.size());
  for (std::size_t i = 0; i < total; ++i) {
    const double sgn = (__builtin_popcountll(i & zmask) & 1) ? -1.0 : 1.0;
    acc += std::conj(amp(i ^ xmask)) * amp(i) * sgn;
  }
  return acc * yphase;
}

double sv_expectation(const Statevector& state, const PauliTermList& terms) {
  cplx total = 0.0;
  for (const auto& t : terms) total += t.coeff * sv_pauli_expectation(state, t.string);
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, std::abs(total.real())))
    throw VerificationError("sv_expectation: non-negligible imaginary part");
  return total.real();
}

cplx sv_inner(const Statevector& a, const Statevector& b) {
  ACK_REQUIRE(a.n_qubits == b.n_qubits, "sv_inner: size mismatch");
  return a.amplitudes.dot(b.amplitudes);  // conjugates the first argument
}

}  // namespace ack
