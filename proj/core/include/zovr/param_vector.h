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

#ifndef ZOVR_PARAM_VECTOR_H_
#define ZOVR_PARAM_VECTOR_H_

#include <cstddef>
#include <span>
#include <vector>

#include "zovr/slot_tracker.h"

namespace zovr {

// Dense parameter state θ ∈ ℝᵈ. The dimension is fixed at construction;
// optimizers mutate the values in place.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t d, double fill = 0.0);
  explicit ParamVector(std::span<const double> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> span() { return values_; }
  std::span<const double> view() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool all_finite() const;
  std::vector<double> to_vector() const;

 private:
  DenseVector values_;
};

// Equality of the IEEE-754 bit patterns, entry by entry.
bool bitwise_equal(std::span<const double> a, std::span<const double> b);

double max_abs(std::span<const double> values);
double norm2(std::span<const double> values);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace zovr

#endif  // ZOVR_PARAM_VECTOR_H_
