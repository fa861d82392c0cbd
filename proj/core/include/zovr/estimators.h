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

// SPSA gradient estimators.
//
// A perturbation direction z ~ N(0, I_d) is never stored: it is identified
// by a PerturbationSeed and regenerated in index order whenever it is
// needed. Estimates are therefore compressed to (seed, coefficient) pairs,
// and every operation that touches θ streams z instead of allocating it.
//
// Loss evaluations mutate θ in place through the cycle
//   θ += μz, evaluate, θ −= 2μz, evaluate, θ += μz
// which restores θ only to floating-point tolerance. Code that must agree
// bit-for-bit with a live run (trajectory replay) re-executes the same
// cycle rather than skipping it.

#ifndef ZOVR_ESTIMATORS_H_
#define ZOVR_ESTIMATORS_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "zovr/errors.h"
#include "zovr/minibatch.h"
#include "zovr/objective.h"
#include "zovr/param_vector.h"
#include "zovr/slot_tracker.h"

namespace zovr {

struct SpsaConfig {
  double mu = 1e-3;   // perturbation scale, > 0
  std::size_t p = 1;  // averaged SPSA draws, ≥ 1

  void validate() const;
};

struct PerturbationSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_offset = 0;

  // Seed of the j-th independent draw of a p-SPSA estimate. Draw 0 is the
  // seed itself; later draws hash (seed, j) into a fresh key.
  PerturbationSeed draw(std::size_t j) const;

  bool operator==(const PerturbationSeed&) const = default;
};

// Compressed SPSA estimate: (1/p) Σⱼ coeffs[j] · z(seed.draw(j)).
struct GradientEstimate {
  PerturbationSeed seed;
  std::vector<double> coeffs;
  std::size_t d = 0;
  std::size_t queries_used = 0;
  // Mean of ½[f(θ+μz) + f(θ−μz)] over the draws; NaN when unknown (replay).
  double loss_estimate = std::numeric_limits<double>::quiet_NaN();

  // Coefficient of the single-draw case.
  double coeff() const { return coeffs.front(); }
  std::size_t draws() const { return coeffs.size(); }
};

// d i.i.d. standard normals, a pure function of (seed, d).
DenseVector regenerate_z(PerturbationSeed seed, std::size_t d);

// θ ← θ + s·μ·z(seed), s ∈ {1, −2}, streaming z.
void perturb_in_place(ParamVector& theta, PerturbationSeed seed, int s,
                      double mu);

// θ ← θ + factor·z(seed) for an arbitrary factor.
void add_scaled_z(ParamVector& theta, PerturbationSeed seed, double factor);

// Runs the perturb/evaluate/restore cycle for one direction and returns
// [f(θ+μz) − f(θ−μz)] / (2μ). When `midpoint` is non-null it receives
// ½[f(θ+μz) + f(θ−μz)], a free estimate of f(θ). A non-finite evaluation
// restores θ and throws NonFiniteLoss; an exception from `evaluate`
// restores θ and propagates.
template <typename Evaluate>
double central_difference(ParamVector& theta, PerturbationSeed seed,
                          double mu, Evaluate&& evaluate,
                          double* midpoint = nullptr) {
  perturb_in_place(theta, seed, 1, mu);
  double plus;
  try {
    plus = evaluate(theta.view());
  } catch (...) {
    add_scaled_z(theta, seed, -mu);
    throw;
  }
  if (!std::isfinite(plus)) {
    add_scaled_z(theta, seed, -mu);
    throw NonFiniteLoss("non-finite loss at θ+μz");
  }
  perturb_in_place(theta, seed, -2, mu);
  double minus;
  try {
    minus = evaluate(theta.view());
  } catch (...) {
    add_scaled_z(theta, seed, mu);
    throw;
  }
  perturb_in_place(theta, seed, 1, mu);
  if (!std::isfinite(minus)) throw NonFiniteLoss("non-finite loss at θ−μz");
  if (midpoint != nullptr) *midpoint = 0.5 * (plus + minus);
  return (plus - minus) / (2.0 * mu);
}

// Per-sample estimate ∇̂fᵢ(θ). Two queries per draw.
GradientEstimate spsa_sample(const Objective& objective, ParamVector& theta,
                             std::size_t index, PerturbationSeed seed,
                             const SpsaConfig& cfg);

// (1/b) Σ_{i∈batch} ∇̂fᵢ(θ) with an independent direction per sample,
// accumulated into one d-length buffer. Reports 2·b·p queries through
// `queries` and the mean midpoint loss through `loss_estimate` when non-null.
DenseVector spsa_batch_avg(const Objective& objective, ParamVector& theta,
                           const Minibatch& batch,
                           std::span<const PerturbationSeed> seeds,
                           const SpsaConfig& cfg,
                           std::size_t* queries = nullptr,
                           double* loss_estimate = nullptr);

// Shared-direction estimate ∇̄f_I(θ): every sample in the batch is perturbed
// along the same z and the batch-mean losses are differenced. 2·b·p queries.
GradientEstimate spsa_batch_shared(const Objective& objective,
                                   ParamVector& theta, const Minibatch& batch,
                                   PerturbationSeed seed, const SpsaConfig& cfg,
                                   std::size_t threads = 1);

DenseVector materialize(const GradientEstimate& estimate);

// θ ← θ + scale · materialize(estimate), without a d-length temporary.
void axpy_estimate_in_place(ParamVector& theta,
                            const GradientEstimate& estimate, double scale);

// Where optimizers get shared-direction estimates from. The live
// implementation queries an objective; trajectory replay substitutes
// recorded coefficients while repeating the same θ arithmetic.
class SharedEstimator {
 public:
  virtual ~SharedEstimator() = default;
  virtual GradientEstimate estimate(ParamVector& theta,
                                    const Minibatch& batch,
                                    PerturbationSeed seed,
                                    const SpsaConfig& cfg) = 0;
};

class ObjectiveEstimator final : public SharedEstimator {
 public:
  explicit ObjectiveEstimator(const Objective& objective,
                              std::size_t threads = 1)
      : objective_(objective), threads_(threads) {}

  GradientEstimate estimate(ParamVector& theta, const Minibatch& batch,
                            PerturbationSeed seed,
                            const SpsaConfig& cfg) override {
    return spsa_batch_shared(objective_, theta, batch, seed, cfg, threads_);
  }

 private:
  const Objective& objective_;
  std::size_t threads_;
};

}  // namespace zovr

#endif  // ZOVR_ESTIMATORS_H_
