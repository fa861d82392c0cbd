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


#include "zovr/mlp.h"

#include <algorithm>
#include <cmath>

#include "zovr/errors.h"
#include "zovr/rng.h"

namespace zovr {

struct Mlp2Problem::Activations {
  double h1[kHidden1];
  double h2[kHidden2];
  std::vector<double> logits;
};

namespace {

struct Offsets {
  std::size_t w1, b1, w2, b2, w3, b3, end;
};

Offsets layout(std::size_t in, std::size_t classes) {
  Offsets o{};
  o.w1 = 0;
  o.b1 = o.w1 + Mlp2Problem::kHidden1 * in;
  o.w2 = o.b1 + Mlp2Problem::kHidden1;
  o.b2 = o.w2 + Mlp2Problem::kHidden2 * Mlp2Problem::kHidden1;
  o.w3 = o.b2 + Mlp2Problem::kHidden2;
  o.b3 = o.w3 + classes * Mlp2Problem::kHidden2;
  o.end = o.b3 + classes;
  return o;
}

// Σ w[k]·x[k] with four interleaved partial sums.
double dot4(const double* w, const double* x, std::size_t count) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    s0 += w[k] * x[k];
    s1 += w[k + 1] * x[k + 1];
    s2 += w[k + 2] * x[k + 2];
    s3 += w[k + 3] * x[k + 3];
  }
  for (; k < count; ++k) s0 += w[k] * x[k];
  return (s0 + s1) + (s2 + s3);
}

// log Σ exp(v), shifted by the max.
double log_sum_exp(std::span<const double> v) {
  const double top = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace

Mlp2Problem::Mlp2Problem(Dataset dataset, std::uint64_t init_seed)
    : data_(std::move(dataset)), init_seed_(init_seed) {
  data_.validate();
  x_.assign(data_.features.begin(), data_.features.end());
  inputs_ = data_.feature_dim;
  classes_ = data_.num_classes;
  d_ = parameter_count(inputs_, classes_);
}

std::size_t Mlp2Problem::parameter_count(std::size_t inputs,
                                         std::size_t classes) {
  return layout(inputs, classes).end;
}

void Mlp2Problem::forward(std::span<const double> theta, std::size_t index,
                          Activations& act) const {
  require(theta.size() == d_, "mlp: dimension mismatch");
  require(index < data_.size(), "mlp: sample index out of range");
  const Offsets o = layout(inputs_, classes_);
  const double* x = x_.data() + index * inputs_;
  for (std::size_t j = 0; j < kHidden1; ++j) {
    const double a =
        theta[o.b1 + j] + dot4(theta.data() + o.w1 + j * inputs_, x, inputs_);
    act.h1[j] = a > 0.0 ? a : 0.0;
  }
  for (std::size_t j = 0; j < kHidden2; ++j) {
    const double* w = theta.data() + o.w2 + j * kHidden1;
    double a = theta[o.b2 + j];
    for (std::size_t k = 0; k < kHidden1; ++k) a += w[k] * act.h1[k];
    act.h2[j] = a > 0.0 ? a : 0.0;
  }
  act.logits.assign(classes_, 0.0);
  for (std::size_t c = 0; c < classes_; ++c) {
    const double* w = theta.data() + o.w3 + c * kHidden2;
    double a = theta[o.b3 + c];
    for (std::size_t k = 0; k < kHidden2; ++k) a += w[k] * act.h2[k];
    act.logits[c] = a;
  }
}

double Mlp2Problem::loss(std::span<const double> theta,
                         std::size_t index) const {
  Activations act;
  forward(theta, index, act);
  const auto label = static_cast<std::size_t>(data_.labels[index]);
  return log_sum_exp(act.logits) - act.logits[label];
}

void Mlp2Problem::add_gradient(std::span<const double> theta,
                               std::size_t index, double scale,
                               std::span<double> out) const {
  require(out.size() == d_, "mlp: gradient buffer size mismatch");
  Activations act;
  forward(theta, index, act);
  const Offsets o = layout(inputs_, classes_);
  const double* x = x_.data() + index * inputs_;
  const auto label = static_cast<std::size_t>(data_.labels[index]);

  // dL/dlogits = softmax − onehot.
  const double lse = log_sum_exp(act.logits);
  std::vector<double> delta3(classes_);
  for (std::size_t c = 0; c < classes_; ++c) {
    delta3[c] = std::exp(act.logits[c] - lse) - (c == label ? 1.0 : 0.0);
  }

  double delta2[kHidden2] = {};
  for (std::size_t c = 0; c < classes_; ++c) {
    const double* w = theta.data() + o.w3 + c * kHidden2;
    double* gw = out.data() + o.w3 + c * kHidden2;
    for (std::size_t k = 0; k < kHidden2; ++k) {
      gw[k] += scale * delta3[c] * act.h2[k];
      delta2[k] += w[k] * delta3[c];
    }
    out[o.b3 + c] += scale * delta3[c];
  }
  for (std::size_t k = 0; k < kHidden2; ++k) {
    if (act.h2[k] <= 0.0) delta2[k] = 0.0;
  }

  double delta1[kHidden1] = {};
  for (std::size_t j = 0; j < kHidden2; ++j) {
    const double* w = theta.data() + o.w2 + j * kHidden1;
    double* gw = out.data() + o.w2 + j * kHidden1;
    for (std::size_t k = 0; k < kHidden1; ++k) {
      gw[k] += scale * delta2[j] * act.h1[k];
      delta1[k] += w[k] * delta2[j];
    }
    out[o.b2 + j] += scale * delta2[j];
  }
  for (std::size_t k = 0; k < kHidden1; ++k) {
    if (act.h1[k] <= 0.0) delta1[k] = 0.0;
  }

  for (std::size_t j = 0; j < kHidden1; ++j) {
    if (delta1[j] == 0.0) continue;
    double* gw = out.data() + o.w1 + j * inputs_;
    const double s = scale * delta1[j];
    for (std::size_t k = 0; k < inputs_; ++k) gw[k] += s * x[k];
    out[o.b1 + j] += s;
  }
}

std::optional<double> Mlp2Problem::metric(std::span<const double> theta) const {
  Activations act;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    forward(theta, i, act);
    const auto best = static_cast<std::size_t>(
        std::max_element(act.logits.begin(), act.logits.end()) -
        act.logits.begin());
    if (best == static_cast<std::size_t>(data_.labels[i])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data_.size());
}

std::vector<double> Mlp2Problem::initial_parameters(std::uint64_t seed) const {
  const Offsets o = layout(inputs_, classes_);
  std::vector<double> theta(d_, 0.0);
  UniformStream uniform(seed == 0 ? init_seed_ : seed, 0);
  auto fill = [&](std::size_t begin, std::size_t count, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t k = 0; k < count; ++k) {
      theta[begin + k] = bound * (2.0 * uniform.next_unit() - 1.0);
    }
  };
  fill(o.w1, kHidden1 * inputs_, inputs_);
  fill(o.w2, kHidden2 * kHidden1, kHidden1);
  fill(o.w3, classes_ * kHidden2, kHidden2);
  return theta;
}

Mlp2Problem make_mlp2(Dataset dataset, std::uint64_t seed) {
  return Mlp2Problem(std::move(dataset), seed);
}

}  // namespace zovr
