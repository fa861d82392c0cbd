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

#include "zovr/objective.h"

#include "zovr/errors.h"

namespace zovr {

double Objective::batch_loss(std::span<const double> theta,
                             std::span<const std::size_t> indices) const {
  require(!indices.empty(), "batch_loss: empty batch");
  double sum = 0.0;
  for (std::size_t index : indices) sum += loss(theta, index);
  return sum / static_cast<double>(indices.size());
}

double Objective::full_loss(std::span<const double> theta) const {
  const std::size_t n = num_samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += loss(theta, i);
  return sum / static_cast<double>(n);
}

void Objective::add_gradient(std::span<const double>, std::size_t, double,
                             std::span<double>) const {
  throw UnsupportedOperation(name() + " does not provide analytic gradients");
}

std::vector<double> Objective::initial_parameters(std::uint64_t) const {
  return std::vector<double>(dimension(), 0.0);
}

std::vector<double> full_gradient(const Objective& objective,
                                  std::span<const double> theta) {
  const std::size_t n = objective.num_samples();
  std::vector<double> grad(objective.dimension(), 0.0);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    objective.add_gradient(theta, i, scale, grad);
  }
  return grad;
}

}  // namespace zovr
