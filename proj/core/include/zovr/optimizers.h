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


// Single-step updates for the zeroth-order optimizers and the first-order
// baseline. Each step mutates θ in place and returns a StepReport; the
// driving loop (run.h) owns batch sampling, seeds and budgets.

#ifndef ZOVR_OPTIMIZERS_H_
#define ZOVR_OPTIMIZERS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zovr/estimators.h"
#include "zovr/minibatch.h"
#include "zovr/objective.h"
#include "zovr/param_vector.h"
#include "zovr/slot_tracker.h"

namespace zovr {

enum class StepKind : std::uint8_t { kFullbatch = 0, kMinibatch = 1, kFo = 2 };

std::string to_string(StepKind kind);

struct StepReport {
  std::size_t step = 0;
  StepKind kind = StepKind::kMinibatch;
  // Batch-loss estimate at θ before the update: ½[f(θ+μz) + f(θ−μz)] for
  // zeroth-order steps, the exact minibatch loss for FO-SGD.
  double loss_before = 0.0;
  std::size_t queries = 0;
  std::size_t backward = 0;
  double eta = 0.0;
  // SPSA coefficients in application order: p for a MeZO or fullbatch
  // step, 2p for a MeZO-SVRG minibatch step (θ first, then θ̄).
  std::vector<double> coeffs;
};

// Settings shared by all optimizers. MeZO and FO-SGD use eta1 only.
struct MezoSvrgConfig {
  double eta1 = 1e-3;  // fullbatch (anchor) learning rate
  double eta2 = 1e-4;  // minibatch learning rate
  std::size_t q = 2;   // anchor period
  std::size_t b = 32;  // minibatch size
  // Samples in the anchor estimate; 0 means all n. Values below n give the
  // large-batch approximation of the fullbatch estimator.
  std::size_t anchor_batch = 0;
  SpsaConfig spsa;
  SamplingMode sampling = SamplingMode::kWithoutReplacement;

  // Throws ContractViolation on q = 0, b = 0, b > n, anchor_batch > n,
  // negative or non-finite learning rates, or a bad SpsaConfig.
  void validate(std::size_t n) const;
  std::size_t resolved_anchor_batch(std::size_t n) const {
    return anchor_batch == 0 ? n : anchor_batch;
  }
};

// Anchor of the memory-efficient variant: a copy of θ at the last
// fullbatch step and the estimate computed there, kept as (seed, coeffs).
struct SvrgAnchor {
  ParamVector theta_bar;
  GradientEstimate g;
  std::size_t step_created = 0;
};

// Anchor of the reference variant, with the fullbatch estimate stored as a
// dense vector.
struct ZoSvrgAnchor {
  ParamVector theta_bar;
  DenseVector g;
  std::size_t step_created = 0;
};

// θ ← θ − η·∇̄f_𝓘(θ). 2·b·p queries.
StepReport mezo_step(SharedEstimator& estimator, ParamVector& theta,
                     const Minibatch& batch, PerturbationSeed seed, double eta,
                     const SpsaConfig& cfg);
StepReport mezo_step(const Objective& objective, ParamVector& theta,
                     const Minibatch& batch, PerturbationSeed seed, double eta,
                     const SpsaConfig& cfg, std::size_t threads = 1);

// One iteration of the memory-efficient SVRG loop at step index t.
//
// When t mod q = 0, `batch` is the anchor batch: g ← ∇̄f_batch(θ),
// θ̄ ← θ, θ ← θ − η₁g. Otherwise `batch` is 𝓘_t and, with one seed for
// both estimates,
//   θ ← θ − η₂∇̄f_𝓘(θ);  θ ← θ + η₂∇̄f_𝓘(θ̄);  θ ← θ − η₂g.
// The θ̄ estimate perturbs and restores θ̄ in place, so θ̄ picks up the
// same rounding drift in a live run and in replay.
StepReport mezo_svrg_step(SharedEstimator& estimator, ParamVector& theta,
                          std::optional<SvrgAnchor>& anchor,
                          const Minibatch& batch, PerturbationSeed seed,
                          const MezoSvrgConfig& cfg, std::size_t t);
StepReport mezo_svrg_step(const Objective& objective, ParamVector& theta,
                          std::optional<SvrgAnchor>& anchor,
                          const Minibatch& batch, PerturbationSeed seed,
                          const MezoSvrgConfig& cfg, std::size_t t,
                          std::size_t threads = 1);

// Reference anchor refresh: θ̄ ← θ, g ← ∇̂f_batch(θ̄) with per-sample
// directions. Reuses the anchor's buffers when present. 2·|batch|·p queries.
std::size_t zo_svrg_refresh(const Objective& objective,
                            const ParamVector& theta,
                            std::optional<ZoSvrgAnchor>& anchor,
                            const Minibatch& anchor_batch,
                            std::span<const PerturbationSeed> seeds,
                            const SpsaConfig& cfg, std::size_t t);

// Reference update θ ← θ − η[∇̂f_𝓘(θ) − ∇̂f_𝓘(θ̄) + g] with per-sample
// averaged estimators, the same per-sample seeds at θ and θ̄, and both
// estimates materialized. 4·b·p queries.
StepReport zo_svrg_step(const Objective& objective, ParamVector& theta,
                        ZoSvrgAnchor& anchor, const Minibatch& batch,
                        std::span<const PerturbationSeed> per_sample_seeds,
                        double eta, const SpsaConfig& cfg);

// θ ← θ − η·(1/b)Σ∇fᵢ(θ). Reports b queries and b backward passes.
// Throws UnsupportedOperation if the objective has no analytic gradient.
StepReport fo_sgd_step(const Objective& objective, ParamVector& theta,
                       const Minibatch& batch, double eta);

}  // namespace zovr

#endif  // ZOVR_OPTIMIZERS_H_
