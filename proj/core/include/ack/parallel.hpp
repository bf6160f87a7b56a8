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

#include <cstddef>
#include <functional>
#include <span>

namespace ack {

/// Runs fn(i) for every i in [0, n) on up to `lanes` threads (lanes <= 1
/// runs inline). Work is handed out by index; if any call throws, the
/// exception of the smallest failing index is rethrown after all lanes stop.
void parallel_for(std::size_t n, int lanes, const std::function<void(std::size_t)>& fn);

/// Sum by a balanced binary tree over the index order. The result depends
/// only on the values and their order.
double pairwise_sum(std::span<const double> values);

/// Lanes to use when the caller passes 0.
int default_lanes();

}  // namespace ack
