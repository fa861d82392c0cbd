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

#ifndef ZOVR_OBJECTIVE_H_
#define ZOVR_OBJECTIVE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zovr {

// Empirical risk f(θ) = (1/n) Σᵢ fᵢ(θ) exposed one sample at a time.
//
// Implementations are immutable after construction, and loss/gradient
// calls are pure, so concurrent evaluation at a shared θ is safe.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::string name() const = 0;
  virtual std::size_t num_samples() const = 0;
  virtual std::size_t dimension() const = 0;

  // fᵢ(θ). One call is one query.
  virtual double loss(std::span<const double> theta,
                      std::size_t index) const = 0;

  // Arithmetic mean of loss() over `indices`, summed in the given order.
  // Not virtual: every objective shares this exact reduction so that the
  // sequential and threaded paths produce identical bits.
  double batch_loss(std::span<const double> theta,
                    std::span<const std::size_t> indices) const;

  // f(θ) over all n samples.
  double full_loss(std::span<const double> theta) const;

  virtual bool has_gradient() const { return false; }

  // out += scale · ∇fᵢ(θ). Throws UnsupportedOperation unless has_gradient().
  virtual void add_gradient(std::span<const double> theta, std::size_t index,
                            double scale, std::span<double> out) const;

  // Task metric such as accuracy, when the objective defines one.
  virtual std::optional<double> metric(std::span<const double>) const {
    return std::nullopt;
  }

  // Documented starting point. Zero unless the model needs symmetry breaking.
  virtual std::vector<double> initial_parameters(std::uint64_t seed) const;

  // Known optimal value f*, when available.
  virtual std::optional<double> optimal_value() const { return std::nullopt; }
};

// ∇f(θ) = (1/n) Σᵢ ∇fᵢ(θ), for evaluation and oracles. Not slot-tracked.
std::vector<double> full_gradient(const Objective& objective,
                                  std::span<const double> theta);

}  // namespace zovr

#endif  // ZOVR_OBJECTIVE_H_
