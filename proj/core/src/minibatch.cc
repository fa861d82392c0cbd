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

#include "zovr/minibatch.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "zovr/errors.h"
#include "zovr/rng.h"

namespace zovr {

void Minibatch::validate(std::size_t n) const {
  require(!indices.empty(), "Minibatch: empty batch");
  for (std::size_t index : indices) {
    require(index < n, "Minibatch: index " + std::to_string(index) +
                           " out of range for n=" + std::to_string(n));
  }
  if (mode == SamplingMode::kWithoutReplacement) {
    std::vector<std::size_t> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "Minibatch: duplicate index under sampling without replacement");
  }
}

Minibatch full_batch(std::size_t n) {
  Minibatch batch;
  batch.indices.resize(n);
  std::iota(batch.indices.begin(), batch.indices.end(), std::size_t{0});
  return batch;
}

Minibatch sample_minibatch(std::size_t n, std::size_t b, SamplingMode mode,
                           std::uint64_t seed, std::uint64_t stream) {
  require(b >= 1, "sample_minibatch: batch size must be positive");
  UniformStream uniform(seed, stream);
  Minibatch batch;
  batch.mode = mode;
  if (mode == SamplingMode::kWithReplacement) {
    batch.indices.reserve(b);
    for (std::size_t k = 0; k < b; ++k) {
      batch.indices.push_back(uniform.next_below(n));
    }
  } else {
    require(b <= n, "sample_minibatch: b exceeds n without replacement");
    if (b == n) return full_batch(n);
    // Floyd's algorithm: b draws, no O(n) scratch.
    std::set<std::size_t> chosen;
    for (std::size_t j = n - b; j < n; ++j) {
      const std::size_t t = uniform.next_below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    batch.indices.assign(chosen.begin(), chosen.end());
  }
  std::sort(batch.indices.begin(), batch.indices.end());
  return batch;
}

}  // namespace zovr
