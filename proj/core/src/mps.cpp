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
#include "ack/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ack/error.hpp"
#include "ack/rng.hpp"

namespace ack {
namespace {

// Rows (s, l): the left-canonical matrix view of a site.
ComplexMatrix stack_rows(const MatrixProductState::SiteTensor& a) {
  const auto dl = a[0].rows(), dr = a[0].cols();
  ComplexMatrix m(2 * dl, dr);
  m.topRows(dl) = a[0];
  m.bottomRows(dl) = a[1];
  return m;
}

// Columns (s, r): the right-canonical matrix view of a site.
ComplexMatrix stack_cols(const MatrixProductState::SiteTensor& a) {
  const auto dl = a[0].rows(), dr = a[0].cols();
  ComplexMatrix m(dl, 2 * dr);
  m.leftCols(dr) = a[0];
  m.rightCols(dr) = a[1];
  return m;
}

struct SplitResult {
  ComplexMatrix left;   // 2Dl x k, rows (s, l)
  ComplexMatrix right;  // k x 2Dr, cols (s, r), singular values absorbed
  double discarded = 0.0;
};

// Applies the gate to the two-site block and splits it by SVD.
SplitResult split_two_site(const MatrixProductState::SiteTensor& a,
                           const MatrixProductState::SiteTensor& b, const Mat4& gate,
                           const Truncation& trunc, bool renormalize) {
  const auto dl = a[0].rows(), dr = b[0].cols();
  ComplexMatrix theta[2][2];
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) theta[s1][s2] = a[s1] * b[s2];
  ComplexMatrix big = ComplexMatrix::Zero(2 * dl, 2 * dr);
  for (int t1 = 0; t1 < 2; ++t1)
    for (int t2 = 0; t2 < 2; ++t2) {
      auto blk = big.block(t1 * dl, t2 * dr, dl, dr);
      for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
          const cplx g = gate(2 * t1 + t2, 2 * s1 + s2);
          if (g != cplx(0.0)) blk += g * theta[s1][s2];
        }
    }

  const SvdResult f = svd(big);
  const Eigen::Index n = f.s.size();
  const double total = f.s.squaredNorm();
  SplitResult out;
  if (total == 0.0) {
    out.left = f.u.leftCols(1);
    out.right = ComplexMatrix::Zero(1, 2 * dr);
    return out;
  }
  // Smallest k whose tail weight is within tolerance, then the chi cap.
  Eigen::Index k = n;
  double tail = 0.0;
  while (k > 1) {
    const double w = f.s(k - 1) * f.s(k - 1);
    if (f.s(k - 1) > kSchmidtFloor * f.s(0) && tail + w > trunc.trunc_tol * total) break;
    tail += w;
    --k;
  }
  k = std::min<Eigen::Index>(k, std::max(1, trunc.chi_max));
  double kept = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) kept += f.s(i) * f.s(i);
  out.discarded = std::max(0.0, 1.0 - kept / total);

  Eigen::VectorXd s = f.s.head(k);
  if (renormalize) s /= std::sqrt(kept);
  out.left = f.u.leftCols(k);
  out.right = s.cast<cplx>().asDiagonal() * f.vh.topRows(k);
  return out;
}

}  // namespace

MatrixProductState::MatrixProductState(std::vector<SiteTensor> tensors, bool normalized,
                                       std::optional<int> center)
    : tensors_(std::move(tensors)), normalized_(normalized) {
  ACK_REQUIRE(!tensors_.empty(), "MatrixProductState: no sites");
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& t = tensors_[i];
    ACK_REQUIRE(t[0].rows() == t[1].rows() && t[0].cols() == t[1].cols(),
                "MatrixProductState: physical slices differ in shape");
    ACK_REQUIRE(t[0].rows() >= 1 && t[0].cols() >= 1, "MatrixProductState: empty bond");
    if (i > 0)
      ACK_REQUIRE(tensors_[i - 1][0].cols() == t[0].rows(),
                  "MatrixProductState: adjacent bond dimensions differ");
  }
  ACK_REQUIRE(tensors_.front()[0].rows() == 1, "MatrixProductState: left boundary bond must be 1");
  ACK_REQUIRE(tensors_.back()[0].cols() == 1, "MatrixProductState: right boundary bond must be 1");
  if (!center) return;
  const int n = n_sites();
  ACK_REQUIRE(*center >= 0 && *center < n, "MatrixProductState: center out of range");
  for (int i = 0; i < n; ++i) {
    if (i == *center) continue;
    const auto& t = tensors_[i];
    const bool left = i < *center;
    const ComplexMatrix g = left ? ComplexMatrix(t[0].adjoint() * t[0] + t[1].adjoint() * t[1])
                                 : ComplexMatrix(t[0] * t[0].adjoint() + t[1] * t[1].adjoint());
    ACK_REQUIRE((g - ComplexMatrix::Identity(g.rows(), g.cols())).norm() < 1e-10,
                "MatrixProductState: site " + std::to_string(i) + " is not an isometry for the claimed center");
  }
  center_ = center;
}

MatrixProductState MatrixProductState::zero_state(int n_sites) {
  ACK_REQUIRE(n_sites >= 1, "zero_state: need at least one site");
  std::vector<Eigen::Vector2cd> locals(n_sites, Eigen::Vector2cd(1.0, 0.0));
  return from_product_state(locals);
}

MatrixProductState MatrixProductState::from_product_state(
    std::span<const Eigen::Vector2cd> locals) {
  ACK_REQUIRE(!locals.empty(), "from_product_state: no sites");
  std::vector<SiteTensor> t;
  t.reserve(locals.size());
  for (const auto& v : locals) {
    ACK_REQUIRE(std::abs(v.squaredNorm() - 1.0) < 1e-10,
                "from_product_state: local vector not normalized");
    SiteTensor a{ComplexMatrix::Constant(1, 1, v(0)), ComplexMatrix::Constant(1, 1, v(1))};
    t.push_back(std::move(a));
  }
  MatrixProductState m(std::move(t));
  m.center_ = 0;
  return m;
}

MatrixProductState MatrixProductState::random(int n_sites, int chi, StreamRng& rng) {
  ACK_REQUIRE(n_sites >= 1 && chi >= 1, "random: invalid size");
  std::vector<int> dims(n_sites + 1, 1);
  for (int b = 1; b < n_sites; ++b) {
    const int from_left = b < 30 ? (1 << b) : chi;
    const int from_right = (n_sites - b) < 30 ? (1 << (n_sites - b)) : chi;
    dims[b] = std::min({chi, from_left, from_right});
  }
  std::vector<SiteTensor> t(n_sites);
  for (int i = 0; i < n_sites; ++i)
    for (int s = 0; s < 2; ++s) t[i][s] = random_matrix(dims[i], dims[i + 1], rng);
  MatrixProductState m(std::move(t), false);
  m.canonicalize(0);
  m.normalize();
  return m;
}

int MatrixProductState::max_bond_dim() const {
  int d = 1;
  for (int b = 0; b + 1 < n_sites(); ++b) d = std::max(d, bond_dim(b));
  return d;
}

void MatrixProductState::left_orthogonalize_site(int i) {
  const ComplexMatrix m = stack_rows(tensors_[i]);
  const auto dl = tensors_[i][0].rows();
  const auto k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), k);
  const ComplexMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  tensors_[i][0] = q.topRows(dl);
  tensors_[i][1] = q.bottomRows(dl);
  for (auto& next : tensors_[i + 1]) next = r * next;
}

void MatrixProductState::right_orthogonalize_site(int i) {
  const ComplexMatrix m = stack_cols(tensors_[i]);
  const auto dr = tensors_[i][0].cols();
  const auto k = std::min(m.rows(), m.cols());
  const ComplexMatrix mh = m.adjoint();
  Eigen::HouseholderQR<ComplexMatrix> qr(mh);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(mh.rows(), k);
  const ComplexMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const ComplexMatrix qh = q.adjoint();  // k x 2Dr
  tensors_[i][0] = qh.leftCols(dr);
  tensors_[i][1] = qh.rightCols(dr);
  const ComplexMatrix rh = r.adjoint();
  for (auto& prev : tensors_[i - 1]) prev = prev * rh;
}

void MatrixProductState::canonicalize(int center) {
  ACK_REQUIRE(center >= 0 && center < n_sites(), "canonicalize: center out of range");
  if (center_) {
    for (int i = *center_; i < center; ++i) left_orthogonalize_site(i);
    for (int i = *center_; i > center; --i) right_orthogonalize_site(i);
  } else {
    for (int i = 0; i < center; ++i) left_orthogonalize_site(i);
    for (int i = n_sites() - 1; i > center; --i) right_orthogonalize_site(i);
  }
  center_ = center;
}

double MatrixProductState::apply_two_site(const Mat4& gate, int left_site,
                                          const Truncation& trunc) {
  ACK_REQUIRE(left_site >= 0 && left_site + 1 < n_sites(), "apply_two_site: invalid site");
  const bool unitary = is_unitary(gate, 1e-10);
  if (!unitary) normalized_ = false;
  canonicalize(left_site);
  const auto dl = tensors_[left_site][0].rows();
  const auto dr = tensors_[left_site + 1][0].cols();
  auto split = split_two_site(tensors_[left_site], tensors_[left_site + 1], gate, trunc,
                              normalized_);
  tensors_[left_site][0] = split.left.topRows(dl);
  tensors_[left_site][1] = split.left.bottomRows(dl);
  tensors_[left_site + 1][0] = split.right.leftCols(dr);
  tensors_[left_site + 1][1] = split.right.rightCols(dr);
  center_ = left_site + 1;
  return split.discarded;
}

void MatrixProductState::apply_two_site_exact(const Mat4& gate, int left_site) {
  apply_two_site(gate, left_site, Truncation{1 << 20, 0.0});
}

void MatrixProductState::apply_two_site_local(const Mat4& gate, int left_site) {
  ACK_REQUIRE(left_site >= 0 && left_site + 1 < n_sites(), "apply_two_site: invalid site");
  const auto dl = tensors_[left_site][0].rows();
  const auto dr = tensors_[left_site + 1][0].cols();
  auto split = split_two_site(tensors_[left_site], tensors_[left_site + 1], gate,
                              Truncation{1 << 20, 0.0}, false);
  tensors_[left_site][0] = split.left.topRows(dl);
  tensors_[left_site][1] = split.left.bottomRows(dl);
  tensors_[left_site + 1][0] = split.right.leftCols(dr);
  tensors_[left_site + 1][1] = split.right.rightCols(dr);
  if (!is_unitary(gate, 1e-10)) normalized_ = false;
  center_.reset();
}

void MatrixProductState::apply_single_site(const Mat2& op, int site) {
  ACK_REQUIRE(site >= 0 && site < n_sites(), "apply_single_site: invalid site");
  auto& t = tensors_[site];
  const ComplexMatrix a0 = op(0, 0) * t[0] + op(0, 1) * t[1];
  const ComplexMatrix a1 = op(1, 0) * t[0] + op(1, 1) * t[1];
  t[0] = a0;
  t[1] = a1;
  if (!is_unitary(op, 1e-10)) {
    normalized_ = false;
    if (center_ && *center_ != site) center_.reset();
  }
}

double MatrixProductState::norm_squared() const {
  if (center_) {
    const auto& t = tensors_[*center_];
    return t[0].squaredNorm() + t[1].squaredNorm();
  }
  return overlap(*this, *this).real();
}

void MatrixProductState::normalize() {
  const double n2 = norm_squared();
  ACK_REQUIRE(n2 > 0.0, "normalize: zero state");
  const int i = center_.value_or(0);
  for (auto& m : tensors_[i]) m /= std::sqrt(n2);
  normalized_ = true;
}

std::pair<MatrixProductState, MatrixProductState> MatrixProductState::split_dominant(
    int bond) const {
  ACK_REQUIRE(bond >= 0 && bond + 1 < n_sites(), "split_dominant: bond out of range");
  MatrixProductState m = *this;
  m.canonicalize(bond);
  const auto dl = m.tensors_[bond][0].rows();
  const SvdResult f = svd(stack_rows(m.tensors_[bond]));
  m.tensors_[bond][0] = f.u.col(0).head(dl);
  m.tensors_[bond][1] = f.u.col(0).tail(dl);
  for (auto& next : m.tensors_[bond + 1]) next = f.vh.row(0) * next;

  std::vector<SiteTensor> left(m.tensors_.begin(), m.tensors_.begin() + bond + 1);
  std::vector<SiteTensor> right(m.tensors_.begin() + bond + 1, m.tensors_.end());
  MatrixProductState l(std::move(left)), r(std::move(right));
  l.center_ = bond;
  r.center_ = 0;
  l.normalize();
  r.normalize();
  return {std::move(l), std::move(r)};
}

MatrixProductState canonicalized(MatrixProductState mps, int center) {
  mps.canonicalize(center);
  return mps;
}

BondSpectrum make_spectrum(std::vector<double> lambdas, int bond_index) {
  double total = 0.0;
  for (double l : lambdas) {
    ACK_REQUIRE(std::isfinite(l) && l >= 0.0, "spectrum: negative or non-finite value");
    total += l * l;
  }
  ACK_REQUIRE(std::abs(total - 1.0) < 1e-10, "spectrum: squared values must sum to 1");
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  std::erase_if(lambdas, [](double l) { return l < kSchmidtFloor; });
  return BondSpectrum{bond_index, std::move(lambdas)};
}

namespace {
BondSpectrum spectrum_from_values(const Eigen::VectorXd& s, int bond) {
  BondSpectrum out;
  out.bond_index = bond;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= kSchmidtFloor) out.lambdas.push_back(s(i));
  return out;
}
}  // namespace

BondSpectrum schmidt_spectrum(const MatrixProductState& mps, int bond) {
  ACK_REQUIRE(bond >= 0 && bond + 1 < mps.n_sites(), "schmidt_spectrum: bond out of range");
  ACK_REQUIRE(mps.normalized(), "schmidt_spectrum: state must be normalized");
  MatrixProductState m = canonicalized(mps, bond);
  return spectrum_from_values(svd(stack_rows(m.site(bond))).s, bond);
}

std::vector<BondSpectrum> all_spectra(const MatrixProductState& mps) {
  ACK_REQUIRE(mps.normalized(), "all_spectra: state must be normalized");
  std::vector<MatrixProductState::SiteTensor> t = canonicalized(mps, 0).tensors();
  std::vector<BondSpectrum> out;
  for (int b = 0; b + 1 < mps.n_sites(); ++b) {
    const auto dl = t[b][0].rows();
    const SvdResult f = svd(stack_rows(t[b]));
    out.push_back(spectrum_from_values(f.s, b));
    t[b][0] = f.u.topRows(dl);
    t[b][1] = f.u.bottomRows(dl);
    const ComplexMatrix sv = f.s.cast<cplx>().asDiagonal() * f.vh;
    for (auto& next : t[b + 1]) next = sv * next;
  }
  return out;
}

double entanglement_entropy(const BondSpectrum& spec) {
  double s = 0.0;
  for (double l : spec.lambdas) {
    if (l < kSchmidtFloor) continue;
    const double p = l * l;
    s -= p * std::log(p);
  }
  return std::max(0.0, s);
}

double renyi_entropy(const BondSpectrum& spec, double alpha) {
  ACK_REQUIRE(std::isfinite(alpha) && alpha > 0.0 && alpha != 1.0,
              "renyi_entropy: alpha must be positive and different from 1");
  double sum = 0.0;
  for (double l : spec.lambdas)
    if (l >= kSchmidtFloor) sum += std::pow(l * l, alpha);
  return std::log(sum) / (1.0 - alpha);
}

double state_gamma(const BondSpectrum& spec) {
  double s = 0.0;
  for (double l : spec.lambdas) s += l;
  return 2.0 * s * s - 1.0;
}

std::vector<double> entropy_heatmap(const MatrixProductState& mps) {
  std::vector<double> out;
  for (const auto& spec : all_spectra(mps)) out.push_back(entanglement_entropy(spec));
  return out;
}

namespace {

// <psi|P|psi> with the orthogonality center already at the first support site.
cplx window_expectation(const MatrixProductState& m, const PauliString& p) {
  const int a = p.min_site(), b = p.max_site();
  const auto d0 = m.site(a)[0].rows();
  ComplexMatrix env = ComplexMatrix::Identity(d0, d0);
  for (int i = a; i <= b; ++i) {
    const Mat2 op = pauli(p.at(i));
    const auto& t = m.site(i);
    ComplexMatrix next = ComplexMatrix::Zero(t[0].cols(), t[0].cols());
    for (int sp = 0; sp < 2; ++sp) {
      const ComplexMatrix left = t[sp].adjoint() * env;
      for (int s = 0; s < 2; ++s)
        if (op(sp, s) != cplx(0.0)) next += op(sp, s) * (left * t[s]);
    }
    env = std::move(next);
  }
  return env.trace();
}

}  // namespace

cplx expectation_pauli(const MatrixProductState& mps, const PauliString& p) {
  ACK_REQUIRE(p.max_site() < mps.n_sites(), "expectation: support outside the chain");
  if (p.is_identity()) return mps.norm_squared();
  return window_expectation(canonicalized(mps, p.min_site()), p);
}

double expectation_local(const MatrixProductState& mps, const PauliTermList& terms) {
  for (const auto& t : terms)
    ACK_REQUIRE(t.string.max_site() < mps.n_sites(), "expectation: support outside the chain");
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return terms[x].string.min_site() < terms[y].string.min_site();
  });
  MatrixProductState m = mps;
  cplx total = 0.0;
  for (std::size_t idx : order) {
    const auto& t = terms[idx];
    if (t.string.is_identity()) {
      total += t.coeff * m.norm_squared();
      continue;
    }
    m.canonicalize(t.string.min_site());
    total += t.coeff * window_expectation(m, t.string);
  }
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, std::abs(total.real())))
    throw VerificationError("expectation_local: non-negligible imaginary part");
  return total.real();
}

cplx overlap(const MatrixProductState& a, const MatrixProductState& b) {
  ACK_REQUIRE(a.n_sites() == b.n_sites(), "overlap: length mismatch");
  ComplexMatrix env = ComplexMatrix::Ones(1, 1);
  for (int i = 0; i < a.n_sites(); ++i) {
    const auto& ta = a.site(i);
    const auto& tb = b.site(i);
    env = ta[0].adjoint() * env * tb[0] + ta[1].adjoint() * env * tb[1];
  }
  return env(0, 0);
}

std::vector<MatrixProductState> partition_at(const MatrixProductState& mps,
                                             std::span<const int> cuts) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    ACK_REQUIRE(cuts[i] >= 0 && cuts[i] + 1 < mps.n_sites(), "partition_at: cut out of range");
    if (i > 0) ACK_REQUIRE(cuts[i] > cuts[i - 1], "partition_at: cuts must be strictly increasing");
  }
  std::vector<MatrixProductState> parts;
  MatrixProductState rest = mps;
  int offset = 0;
  for (int c : cuts) {
    auto [left, right] = rest.split_dominant(c - offset);
    parts.push_back(std::move(left));
    rest = std::move(right);
    offset = c + 1;
  }
  parts.push_back(std::move(rest));
  return parts;
}

Statevector to_statevector(const MatrixProductState& mps) {
  const int n = mps.n_sites();
  if (n > kMaxStatevectorQubits)
    throw GuardError("to_statevector: " + std::to_string(n) + " sites exceeds the limit of " +
                     std::to_string(kMaxStatevectorQubits));
  ComplexMatrix psi = ComplexMatrix::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    const auto& t = mps.site(i);
    ComplexMatrix next(psi.rows() * 2, t[0].cols());
    for (Eigen::Index r = 0; r < psi.rows(); ++r) {
      next.row(2 * r) = psi.row(r) * t[0];
      next.row(2 * r + 1) = psi.row(r) * t[1];
    }
    psi = std::move(next);
  }
  Statevector sv;
  sv.n_qubits = n;
  sv.amplitudes = psi.col(0);
  sv.normalized = mps.normalized();
  return sv;
}

}  // namespace ack
