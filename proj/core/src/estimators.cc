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

#include "zovr/estimators.h"

#include "zovr/parallel.h"
#include "zovr/rng.h"

namespace zovr {
namespace {

// Stream-key tag mixed into per-draw seeds.
constexpr std::uint64_t kDrawTag = 0x5350534144524157ULL;  // "SPSADRAW"

void check_dimension(std::size_t expected, std::size_t actual,
                     const char* where) {
  require(expected == actual, std::string(where) + ": dimension mismatch (" +
                                  std::to_string(expected) + " vs " +
                                  std::to_string(actual) + ")");
}

}  // namespace

void SpsaConfig::validate() const {
  require(mu > 0.0 && std::isfinite(mu), "SpsaConfig: mu must be > 0");
  require(p >= 1, "SpsaConfig: p must be >= 1");
}

PerturbationSeed PerturbationSeed::draw(std::size_t j) const {
  if (j == 0) return *this;
  return {philox_hash(seed, kDrawTag, j), stream_offset};
}

DenseVector regenerate_z(PerturbationSeed seed, std::size_t d) {
  require(d >= 1, "regenerate_z: d must be positive");
  DenseVector z(d);
  NormalStream stream(seed.seed, seed.stream_offset);
  for (double& value : z) value = stream.next();
  return z;
}

void add_scaled_z(ParamVector& theta, PerturbationSeed seed, double factor) {
  NormalStream stream(seed.seed, seed.stream_offset);
  for (double& value : theta) value += factor * stream.next();
}

void perturb_in_place(ParamVector& theta, PerturbationSeed seed, int s,
                      double mu) {
  require(s == 1 || s == -2, "perturb_in_place: s must be 1 or -2");
  require(mu > 0.0, "perturb_in_place: mu must be > 0");
  add_scaled_z(theta, seed, static_cast<double>(s) * mu);
}

GradientEstimate spsa_sample(const Objective& objective, ParamVector& theta,
                             std::size_t index, PerturbationSeed seed,
                             const SpsaConfig& cfg) {
  cfg.validate();
  check_dimension(objective.dimension(), theta.size(), "spsa_sample");
  require(index < objective.num_samples(), "spsa_sample: index out of range");
  GradientEstimate estimate{seed, {}, theta.size(), 0};
  estimate.coeffs.reserve(cfg.p);
  double loss_sum = 0.0;
  for (std::size_t j = 0; j < cfg.p; ++j) {
    double midpoint = 0.0;
    estimate.coeffs.push_back(central_difference(
        theta, seed.draw(j), cfg.mu,
        [&](std::span<const double> point) {
          return objective.loss(point, index);
        },
        &midpoint));
    loss_sum += midpoint;
    estimate.queries_used += 2;
  }
  estimate.loss_estimate = loss_sum / static_cast<double>(cfg.p);
  return estimate;
}

DenseVector spsa_batch_avg(const Objective& objective, ParamVector& theta,
                           const Minibatch& batch,
                           std::span<const PerturbationSeed> seeds,
                           const SpsaConfig& cfg, std::size_t* queries,
                           double* loss_estimate) {
  cfg.validate();
  check_dimension(objective.dimension(), theta.size(), "spsa_batch_avg");
  batch.validate(objective.num_samples());
  require(seeds.size() == batch.size(),
          "spsa_batch_avg: need one seed per batch entry");
  const std::size_t d = theta.size();
  DenseVector accumulator(d, 0.0);
  std::size_t used = 0;
  double loss_sum = 0.0;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const std::size_t index = batch.indices[k];
    for (std::size_t j = 0; j < cfg.p; ++j) {
      const PerturbationSeed direction = seeds[k].draw(j);
      double midpoint = 0.0;
      const double coeff = central_difference(
          theta, direction, cfg.mu,
          [&](std::span<const double> point) {
            return objective.loss(point, index);
          },
          &midpoint);
      loss_sum += midpoint;
      used += 2;
      NormalStream stream(direction.seed, direction.stream_offset);
      for (double& value : accumulator) value += coeff * stream.next();
    }
  }
  const std::size_t terms = batch.size() * cfg.p;
  if (terms > 1) {
    const double inv = 1.0 / static_cast<double>(terms);
    for (double& value : accumulator) value *= inv;
  }
  if (queries != nullptr) *queries = used;
  if (loss_estimate != nullptr) {
    *loss_estimate = loss_sum / static_cast<double>(terms);
  }
  return accumulator;
}

GradientEstimate spsa_batch_shared(const Objective& objective,
                                   ParamVector& theta, const Minibatch& batch,
                                   PerturbationSeed seed, const SpsaConfig& cfg,
                                   std::size_t threads) {
  cfg.validate();
  check_dimension(objective.dimension(), theta.size(), "spsa_batch_shared");
  batch.validate(objective.num_samples());
  GradientEstimate estimate{seed, {}, theta.size(), 0};
  estimate.coeffs.reserve(cfg.p);
  double loss_sum = 0.0;
  for (std::size_t j = 0; j < cfg.p; ++j) {
    double midpoint = 0.0;
    estimate.coeffs.push_back(central_difference(
        theta, seed.draw(j), cfg.mu,
        [&](std::span<const double> point) {
          return evaluate_batch_loss(objective, point, batch.indices, threads);
        },
        &midpoint));
    loss_sum += midpoint;
    estimate.queries_used += 2 * batch.size();
  }
  estimate.loss_estimate = loss_sum / static_cast<double>(cfg.p);
  return estimate;
}

DenseVector materialize(const GradientEstimate& estimate) {
  require(estimate.d >= 1 && !estimate.coeffs.empty(),
          "materialize: empty estimate");
  DenseVector out(estimate.d, 0.0);
  for (std::size_t j = 0; j < estimate.draws(); ++j) {
    const PerturbationSeed direction = estimate.seed.draw(j);
    NormalStream stream(direction.seed, direction.stream_offset);
    const double coeff = estimate.coeffs[j];
    for (double& value : out) value += coeff * stream.next();
  }
  if (estimate.draws() > 1) {
    const double inv = 1.0 / static_cast<double>(estimate.draws());
    for (double& value : out) value *= inv;
  }
  return out;
}

void axpy_estimate_in_place(ParamVector& theta,
                            const GradientEstimate& estimate, double scale) {
  check_dimension(estimate.d, theta.size(), "axpy_estimate_in_place");
  const double weight = 1.0 / static_cast<double>(estimate.draws());
  for (std::size_t j = 0; j < estimate.draws(); ++j) {
    const double factor = estimate.draws() == 1
                              ? scale * estimate.coeffs[j]
                              : scale * estimate.coeffs[j] * weight;
    add_scaled_z(theta, estimate.seed.draw(j), factor);
  }
}

}  // namespace zovr
