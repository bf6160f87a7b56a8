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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ack {

/// Tensor product of single-site Paulis; identity sites are omitted.
/// Factors are kept sorted by site with at most one factor per site.
class PauliString {
 public:
  PauliString() = default;
  /// Takes (site, label) pairs with labels in {X, Y, Z, I}; I is dropped.
  explicit PauliString(std::vector<std::pair<int, char>> factors);

  /// Dense form: character k acts on site offset + k, e.g. "XIZ".
  static PauliString dense(std::string_view labels, int offset = 0);

  const std::vector<std::pair<int, char>>& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }
  int max_site() const { return factors_.empty() ? -1 : factors_.back().first; }
  int min_site() const { return factors_.empty() ? -1 : factors_.front().first; }
  char at(int site) const;

  /// Factors with site in [lo, hi], re-indexed relative to lo.
  PauliString restrict_to(int lo, int hi) const;

  std::string str() const;
  bool operator==(const PauliString&) const = default;

 private:
  std::vector<std::pair<int, char>> factors_;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
  bool operator==(const PauliTerm&) const = default;
};

using PauliTermList = std::vector<PauliTerm>;

}  // namespace ack
