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


#ifndef ZOVR_LR_SCHEDULE_H_
#define ZOVR_LR_SCHEDULE_H_

#include <cstddef>
#include <utility>
#include <vector>

namespace zovr {

// Loss-feedback annealing: if the mean of the last w losses exceeds κ times
// the mean of the w before them, both learning rates are divided by α.
struct LrScheduleState {
  double kappa = 1.05;
  double alpha = 5.0;
  std::size_t window = 1;
  std::vector<double> loss_history;

  // Throws ContractViolation unless κ > 1, α > 1 and w ≥ 1.
  void validate() const;
};

// Returns the (possibly annealed) learning rates. Fewer than 2w recorded
// losses, or a zero previous mean, leaves them unchanged.
std::pair<double, double> lr_schedule_update(const LrScheduleState& state,
                                             double eta1, double eta2);

}  // namespace zovr

#endif  // ZOVR_LR_SCHEDULE_H_
