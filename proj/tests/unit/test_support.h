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

// Small objectives and decorators shared by the unit tests.

#ifndef ZOVR_TESTS_TEST_SUPPORT_H_
#define ZOVR_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zovr/objective.h"

namespace zovr::testing {

// Forwards to another objective and counts loss() calls.
class CountingObjective final : public Objective {
 public:
  explicit CountingObjective(const Objective& inner) : inner_(inner) {}
  std::string name() const override { return inner_.name(); }
  std::size_t num_samples() const override { return inner_.num_samples(); }
  std::size_t dimension() const override { return inner_.dimension(); }
  double loss(std::span<const double> theta,
              std::size_t index) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.loss(theta, index);
  }
  bool has_gradient() const override { return inner_.has_gradient(); }
  void add_gradient(std::span<const double> theta, std::size_t index,
                    double scale, std::span<double> out) const override {
    inner_.add_gradient(theta, index, scale, out);
  }
  std::optional<double> optimal_value() const override {
    return inner_.optimal_value();
  }
  std::size_t calls() const { return calls_.load(); }
  void reset() { calls_ = 0; }

 private:
  const Objective& inner_;
  mutable std::atomic<std::size_t> calls_{0};
};

// fᵢ(θ) = cᵢ for every sample.
class ConstantObjective final : public Objective {
 public:
  ConstantObjective(std::size_t d, std::vector<double> values)
      : d_(d), values_(std::move(values)) {}
  std::string name() const override { return "constant"; }
  std::size_t num_samples() const override { return values_.size(); }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double>, std::size_t i) const override {
    return values_[i];
  }

 private:
  std::size_t d_;
  std::vector<double> values_;
};

// fᵢ(θ) = cᵢ·θ, with one coefficient row per sample.
class LinearObjective final : public Objective {
 public:
  LinearObjective(std::size_t d, std::vector<double> rows)
      : d_(d), rows_(std::move(rows)) {}
  std::string name() const override { return "linear"; }
  std::size_t num_samples() const override { return rows_.size() / d_; }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double> theta, std::size_t i) const override {
    double s = 0.0;
    for (std::size_t k = 0; k < d_; ++k) s += rows_[i * d_ + k] * theta[k];
    return s;
  }
  std::span<const double> row(std::size_t i) const {
    return {rows_.data() + i * d_, d_};
  }

 private:
  std::size_t d_;
  std::vector<double> rows_;
};

// fᵢ(θ) = aᵢ‖θ‖² in d dimensions; d = 1, a = 1 is the textbook θ².
class SquareObjective final : public Objective {
 public:
  explicit SquareObjective(std::vector<double> scales, std::size_t d = 1)
      : d_(d), scales_(std::move(scales)) {}
  std::string name() const override { return "square"; }
  std::size_t num_samples() const override { return scales_.size(); }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double> theta, std::size_t i) const override {
    double s = 0.0;
    for (double v : theta) s += v * v;
    return scales_[i] * s;
  }
  bool has_gradient() const override { return true; }
  void add_gradient(std::span<const double> theta, std::size_t i, double scale,
                    std::span<double> out) const override {
    for (std::size_t k = 0; k < d_; ++k) {
      out[k] += scale * 2.0 * scales_[i] * theta[k];
    }
  }

 private:
  std::size_t d_;
  std::vector<double> scales_;
};

// Returns a non-finite loss at every query.
class NanObjective final : public Objective {
 public:
  explicit NanObjective(std::size_t d) : d_(d) {}
  std::string name() const override { return "nan"; }
  std::size_t num_samples() const override { return 4; }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double>, std::size_t) const override {
    return std::nan("");
  }

 private:
  std::size_t d_;
};

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace zovr::testing

#endif  // ZOVR_TESTS_TEST_SUPPORT_H_
