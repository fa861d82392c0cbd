// Copyright 2026 The zovr Authors.
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

#ifndef ZOVR_MINIBATCH_H_
#define ZOVR_MINIBATCH_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace zovr {

enum class SamplingMode { kWithReplacement, kWithoutReplacement };

struct Minibatch {
  std::vector<std::size_t> indices;
  SamplingMode mode = SamplingMode::kWithoutReplacement;

  std::size_t size() const { return indices.size(); }
  // Throws ContractViolation if an index is out of [0, n), or duplicated
  // under kWithoutReplacement.
  void validate(std::size_t n) const;
};

// {0, 1, …, n−1}.
Minibatch full_batch(std::size_t n);

// b indices drawn uniformly from [0, n) using the counter-based uniform
// stream (seed, stream). Indices are returned in ascending order, which is
// also the loss-reduction order.
Minibatch sample_minibatch(std::size_t n, std::size_t b, SamplingMode mode,
                           std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace zovr

#endif  // ZOVR_MINIBATCH_H_
