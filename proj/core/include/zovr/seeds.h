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


// Derivation of every per-step random seed from one master seed, so that a
// run (and its trajectory file) is determined by the master seed alone.
//
//   perturbation z at step t     (philox_hash(master, t, 1), offset 0)
//   minibatch 𝓘_t                philox_hash(master, t, 2)
//   anchor batch at step t       philox_hash(master, t, 3)
//   per-sample direction i, t    (philox_hash(master, t, 4), offset i)
//   per-sample anchor dir. i, t  (philox_hash(master, t, 5), offset i)

#ifndef ZOVR_SEEDS_H_
#define ZOVR_SEEDS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zovr/estimators.h"

namespace zovr::seeds {

enum class Purpose : std::uint64_t {
  kPerturbation = 1,
  kBatch = 2,
  kAnchorBatch = 3,
  kPerSample = 4,
  kPerSampleAnchor = 5,
};

std::uint64_t derive(std::uint64_t master, std::uint64_t step, Purpose purpose);

PerturbationSeed perturbation(std::uint64_t master, std::uint64_t step);

// One seed per batch entry, all sharing a key and differing in stream.
std::vector<PerturbationSeed> per_sample(std::uint64_t master,
                                         std::uint64_t step,
                                         const std::vector<std::size_t>& indices,
                                         Purpose purpose = Purpose::kPerSample);

}  // namespace zovr::seeds

#endif  // ZOVR_SEEDS_H_
