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


#include "zovr/seeds.h"

#include "zovr/rng.h"

namespace zovr::seeds {

std::uint64_t derive(std::uint64_t master, std::uint64_t step,
                     Purpose purpose) {
  return philox_hash(master, step, static_cast<std::uint64_t>(purpose));
}

PerturbationSeed perturbation(std::uint64_t master, std::uint64_t step) {
  return {derive(master, step, Purpose::kPerturbation), 0};
}

std::vector<PerturbationSeed> per_sample(
    std::uint64_t master, std::uint64_t step,
    const std::vector<std::size_t>& indices, Purpose purpose) {
  const std::uint64_t key = derive(master, step, purpose);
  std::vector<PerturbationSeed> out;
  out.reserve(indices.size());
  // Keyed by sample index so θ and θ̄ see the same direction for sample i.
  for (std::size_t index : indices) out.push_back({key, index});
  return out;
}

}  // namespace zovr::seeds
