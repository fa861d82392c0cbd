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


#include "zovr/lr_schedule.h"

#include <cmath>

#include "zovr/errors.h"

namespace zovr {

void LrScheduleState::validate() const {
  require(kappa > 1.0, "LrScheduleState: kappa must be > 1");
  require(alpha > 1.0, "LrScheduleState: alpha must be > 1");
  require(window >= 1, "LrScheduleState: window must be >= 1");
}

std::pair<double, double> lr_schedule_update(const LrScheduleState& state,
                                             double eta1, double eta2) {
  state.validate();
  const std::size_t w = state.window;
  const std::vector<double>& losses = state.loss_history;
  if (losses.size() < 2 * w) return {eta1, eta2};
  const std::size_t end = losses.size();
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t k = end - w; k < end; ++k) m1 += losses[k];
  for (std::size_t k = end - 2 * w; k < end - w; ++k) m2 += losses[k];
  m1 /= static_cast<double>(w);
  m2 /= static_cast<double>(w);
  if (m2 == 0.0 || !std::isfinite(m1) || !std::isfinite(m2)) {
    return {eta1, eta2};
  }
  if (m1 / m2 > state.kappa) return {eta1 / state.alpha, eta2 / state.alpha};
  return {eta1, eta2};
}

}  // namespace zovr
