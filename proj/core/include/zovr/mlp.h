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


#ifndef ZOVR_MLP_H_
#define ZOVR_MLP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zovr/dataset.h"
#include "zovr/objective.h"

namespace zovr {

// Classifier input → 32 → 16 → classes with ReLU hidden layers and softmax
// cross-entropy per sample.
//
// θ layout (each weight matrix row-major, one row per output unit):
//   W1[32×in] b1[32] W2[16×32] b2[16] W3[classes×16] b3[classes]
class Mlp2Problem final : public Objective {
 public:
  static constexpr std::size_t kHidden1 = 32;
  static constexpr std::size_t kHidden2 = 16;

  Mlp2Problem(Dataset dataset, std::uint64_t init_seed);

  static std::size_t parameter_count(std::size_t inputs, std::size_t classes);

  std::string name() const override { return "mlp"; }
  std::size_t num_samples() const override { return data_.size(); }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double> theta, std::size_t index) const override;
  bool has_gradient() const override { return true; }
  // Hand-written backpropagation.
  void add_gradient(std::span<const double> theta, std::size_t index,
                    double scale, std::span<double> out) const override;
  // Training-set accuracy (argmax of the logits).
  std::optional<double> metric(std::span<const double> theta) const override;
  // Each weight uniform in ±1/√fan_in, biases zero. `seed` 0 means the
  // seed given at construction.
  std::vector<double> initial_parameters(std::uint64_t seed) const override;

  const Dataset& dataset() const { return data_; }
  std::uint64_t init_seed() const { return init_seed_; }

 private:
  struct Activations;
  void forward(std::span<const double> theta, std::size_t index,
               Activations& act) const;

  Dataset data_;
  std::vector<double> x_;  // features widened once for the first layer
  std::uint64_t init_seed_;
  std::size_t inputs_;
  std::size_t classes_;
  std::size_t d_;
};

// Validates the dataset and builds the model.
Mlp2Problem make_mlp2(Dataset dataset, std::uint64_t seed);

}  // namespace zovr

#endif  // ZOVR_MLP_H_
