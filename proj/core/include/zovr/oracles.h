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


// Brute-force checks of the estimator algebra on small instances.

#ifndef ZOVR_ORACLES_H_
#define ZOVR_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "zovr/estimators.h"
#include "zovr/least_squares.h"
#include "zovr/normal_equations.h"
#include "zovr/objective.h"

namespace zovr {

// Averages the shared estimator ∇̄f_𝓘(θ) over every size-b subset of [n]
// with one fixed direction and returns
//   ‖average − ∇̄f(θ)‖∞ / ‖∇̄f(θ)‖∞.
// Requires n ≤ 12 and 1 ≤ b ≤ n. A zero fullbatch estimate returns the
// absolute deviation.
double unbiasedness_check(const Objective& objective,
                          std::span<const double> theta,
                          PerturbationSeed z_seed, std::size_t b,
                          const SpsaConfig& cfg = {});

struct ControlVariateOptions {
  // Sample counts M for the with-replacement cross-moment estimate.
  std::vector<std::size_t> sample_counts = {1000, 100000};
  std::size_t repeats = 10;
  std::uint64_t sampling_seed = 1;
  SpsaConfig spsa;
};

struct ControlVariateReport {
  double sum_norm_inf = 0.0;    // ‖Σᵢ uᵢ‖∞
  double max_u_norm_inf = 0.0;  // maxᵢ ‖uᵢ‖∞
  // Mean of uᵢ·uⱼ over all n² ordered pairs, evaluated as ‖(1/n)Σuᵢ‖².
  double population_moment = 0.0;
  // (M, mean over repeats of |(1/M)Σₘ u_{iₘ}·u_{jₘ}|) with iₘ, jₘ drawn
  // independently and uniformly.
  std::vector<std::pair<std::size_t, double>> cross_moments;
};

// uᵢ = ∇̄fᵢ(θ) − ∇̄fᵢ(θ′) − (∇̄f(θ) − ∇̄f(θ′)), all with direction z_seed.
// Requires n ≤ 64.
ControlVariateReport control_variate_check(
    const Objective& objective, std::span<const double> theta,
    std::span<const double> theta_prime, PerturbationSeed z_seed,
    const ControlVariateOptions& options = {});

// Dense direct solve of the normal equations, independent of optimizers.
NormalEquationsSolution ls_normal_equations(const LeastSquaresProblem& problem);

struct VarianceProbe {
  std::size_t samples = 0;
  double plain_trace = 0.0;    // tr Cov of ∇̄f_𝓘(θ)
  double blended_trace = 0.0;  // tr Cov of ∇̄f_𝓘(θ) − ∇̄f_𝓘(θ̄) + ∇̄f(θ̄)
  // Standard errors of the two trace estimates.
  double plain_se = 0.0;
  double blended_se = 0.0;
};

// Monte Carlo over num_seeds fresh (batch, z) draws at fixed θ and θ̄. Each
// draw also takes a fresh fullbatch anchor direction. Requires
// num_seeds ≥ 100.
VarianceProbe estimator_variance_probe(const Objective& objective,
                                       std::span<const double> theta,
                                       std::span<const double> theta_bar,
                                       std::size_t b, std::size_t num_seeds,
                                       std::uint64_t seed,
                                       const SpsaConfig& cfg = {});

// ‖mean over `draws` directions of ∇̄f(θ) − ∇f(θ)‖₂ / ‖∇f(θ)‖₂. Shrinks
// with `draws` on quadratics. Needs an analytic gradient.
double spsa_mean_error(const Objective& objective, std::span<const double> theta,
                       std::size_t draws, std::uint64_t seed,
                       const SpsaConfig& cfg = {});

}  // namespace zovr

#endif  // ZOVR_ORACLES_H_
