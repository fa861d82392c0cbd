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


// Analytic memory model in parameter-sized float slots. One inference
// footprint is d slots (θ alone); kOverheadSlots covers scalars such as
// seeds, coefficients and learning rates.

#ifndef ZOVR_MEMORY_MODEL_H_
#define ZOVR_MEMORY_MODEL_H_

#include <cstddef>
#include <string>

namespace zovr {

inline constexpr std::size_t kOverheadSlots = 16;

enum class AccountingMode { kStoreG, kRecomputeG, kNaiveSvrg };

std::string to_string(AccountingMode mode);
// Accepts "store_g", "recompute_g", "naive_svrg"; throws ContractViolation.
AccountingMode parse_accounting_mode(const std::string& name);

// Modeled peak slots:
//   mezo                       d + C
//   mezo-svrg, store_g        3d + C   (θ, θ̄, g)
//   mezo-svrg, recompute_g    2d + C   (θ, θ̄; g recomputed on demand)
//   zo-svrg or naive_svrg     5d + C   (θ, θ̄, g and two minibatch vectors)
//   fo-sgd                    2d + C   (θ and a gradient buffer)
// The mode only affects mezo-svrg; naive_svrg applied to mezo-svrg selects
// the naive reference layout.
std::size_t account_memory(const std::string& optimizer, AccountingMode mode,
                           std::size_t d);
std::size_t account_memory(const std::string& optimizer,
                           const std::string& mode, std::size_t d);

}  // namespace zovr

#endif  // ZOVR_MEMORY_MODEL_H_
