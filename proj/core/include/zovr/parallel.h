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

#ifndef ZOVR_PARALLEL_H_
#define ZOVR_PARALLEL_H_

#include <cstddef>
#include <span>

#include "zovr/objective.h"

namespace zovr {

// Thread cap for batch loss evaluation, read from ZOVR_THREADS.
// Unset, empty, or unparsable values mean 1.
std::size_t configured_threads();

// Mean loss over `indices`. With threads > 1 the per-sample losses are
// computed concurrently, then reduced in index-list order, so the result is
// bit-identical to Objective::batch_loss for any thread count.
double evaluate_batch_loss(const Objective& objective,
                           std::span<const double> theta,
                           std::span<const std::size_t> indices,
                           std::size_t threads);

}  // namespace zovr

#endif  // ZOVR_PARALLEL_H_
