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


#include "zovr/optimizers.h"

#include <algorithm>
#include <cmath>

#include "zovr/errors.h"

namespace zovr {
namespace {

void check_eta(double eta, const char* name) {
  require(std::isfinite(eta) && eta >= 0.0,
          std::string(name) + " must be finite and non-negative");
}

void check_theta(const Objective& objective, const ParamVector& theta) {
  require(theta.size() == objective.dimension(),
          "optimizer: parameter dimension does not match objective");
}

void append(std::vector<double>& out, const std::vector<double>& values) {
  out.insert(out.end(), values.begin(), values.end());
}

}  // namespace

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::kFullbatch:
      return "fullbatch";
    case StepKind::kMinibatch:
      return "minibatch";
    case StepKind::kFo:
      return "fo";
  }
  return "unknown";
}

void MezoSvrgConfig::validate(std::size_t n) const {
  spsa.validate();
  check_eta(eta1, "eta1");
  check_eta(eta2, "eta2");
  require(q >= 1, "q must be >= 1");
  require(b >= 1, "batch size must be >= 1");
  require(sampling == SamplingMode::kWithReplacement || b <= n,
          "batch size exceeds sample count");
  require(anchor_batch <= n, "anchor batch exceeds sample count");
}

StepReport mezo_step(SharedEstimator& estimator, ParamVector& theta,
                     const Minibatch& batch, PerturbationSeed seed, double eta,
                     const SpsaConfig& cfg) {
  require(batch.size() >= 1, "mezo_step: empty batch");
  check_eta(eta, "mezo_step: eta");
  GradientEstimate g = estimator.estimate(theta, batch, seed, cfg);
  axpy_estimate_in_place(theta, g, -eta);
  StepReport report;
  report.kind = StepKind::kMinibatch;
  report.loss_before = g.loss_estimate;
  report.queries = g.queries_used;
  report.eta = eta;
  report.coeffs = std::move(g.coeffs);
  return report;
}

StepReport mezo_step(const Objective& objective, ParamVector& theta,
                     const Minibatch& batch, PerturbationSeed seed, double eta,
                     const SpsaConfig& cfg, std::size_t threads) {
  check_theta(objective, theta);
  ObjectiveEstimator estimator(objective, threads);
  return mezo_step(estimator, theta, batch, seed, eta, cfg);
}

StepReport mezo_svrg_step(SharedEstimator& estimator, ParamVector& theta,
                          std::optional<SvrgAnchor>& anchor,
                          const Minibatch& batch, PerturbationSeed seed,
                          const MezoSvrgConfig& cfg, std::size_t t) {
  require(cfg.q >= 1, "mezo_svrg_step: q must be >= 1");
  require(batch.size() >= 1, "mezo_svrg_step: empty batch");
  check_eta(cfg.eta1, "mezo_svrg_step: eta1");
  check_eta(cfg.eta2, "mezo_svrg_step: eta2");
  StepReport report;
  report.step = t;

  if (t % cfg.q == 0) {
    GradientEstimate g = estimator.estimate(theta, batch, seed, cfg.spsa);
    if (anchor && anchor->theta_bar.size() == theta.size()) {
      std::copy(theta.begin(), theta.end(), anchor->theta_bar.begin());
      anchor->g = g;
      anchor->step_created = t;
    } else {
      anchor.emplace(SvrgAnchor{ParamVector(theta.view()), g, t});
    }
    axpy_estimate_in_place(theta, anchor->g, -cfg.eta1);
    report.kind = StepKind::kFullbatch;
    report.loss_before = g.loss_estimate;
    report.queries = g.queries_used;
    report.eta = cfg.eta1;
    report.coeffs = std::move(g.coeffs);
    return report;
  }

  require(anchor.has_value(),
          "mezo_svrg_step: minibatch step without an anchor");
  require(anchor->theta_bar.size() == theta.size(),
          "mezo_svrg_step: anchor dimension mismatch");
  GradientEstimate at_theta = estimator.estimate(theta, batch, seed, cfg.spsa);
  axpy_estimate_in_place(theta, at_theta, -cfg.eta2);
  GradientEstimate at_anchor =
      estimator.estimate(anchor->theta_bar, batch, seed, cfg.spsa);
  axpy_estimate_in_place(theta, at_anchor, cfg.eta2);
  axpy_estimate_in_place(theta, anchor->g, -cfg.eta2);
  report.kind = StepKind::kMinibatch;
  report.loss_before = at_theta.loss_estimate;
  report.queries = at_theta.queries_used + at_anchor.queries_used;
  report.eta = cfg.eta2;
  report.coeffs = std::move(at_theta.coeffs);
  append(report.coeffs, at_anchor.coeffs);
  return report;
}

StepReport mezo_svrg_step(const Objective& objective, ParamVector& theta,
                          std::optional<SvrgAnchor>& anchor,
                          const Minibatch& batch, PerturbationSeed seed,
                          const MezoSvrgConfig& cfg, std::size_t t,
                          std::size_t threads) {
  check_theta(objective, theta);
  ObjectiveEstimator estimator(objective, threads);
  return mezo_svrg_step(estimator, theta, anchor, batch, seed, cfg, t);
}

std::size_t zo_svrg_refresh(const Objective& objective,
                            const ParamVector& theta,
                            std::optional<ZoSvrgAnchor>& anchor,
                            const Minibatch& anchor_batch,
                            std::span<const PerturbationSeed> seeds,
                            const SpsaConfig& cfg, std::size_t t) {
  check_theta(objective, theta);
  if (anchor && anchor->theta_bar.size() == theta.size()) {
    std::copy(theta.begin(), theta.end(), anchor->theta_bar.begin());
    // Free the old estimate before building the new one.
    DenseVector().swap(anchor->g);
  } else {
    anchor.emplace(ZoSvrgAnchor{ParamVector(theta.view()), DenseVector(), t});
  }
  std::size_t queries = 0;
  anchor->g = spsa_batch_avg(objective, anchor->theta_bar, anchor_batch, seeds,
                             cfg, &queries);
  anchor->step_created = t;
  return queries;
}

StepReport zo_svrg_step(const Objective& objective, ParamVector& theta,
                        ZoSvrgAnchor& anchor, const Minibatch& batch,
                        std::span<const PerturbationSeed> per_sample_seeds,
                        double eta, const SpsaConfig& cfg) {
  check_theta(objective, theta);
  check_eta(eta, "zo_svrg_step: eta");
  require(anchor.theta_bar.size() == theta.size() &&
              anchor.g.size() == theta.size(),
          "zo_svrg_step: anchor is missing or has the wrong dimension");
  std::size_t queries_theta = 0;
  std::size_t queries_anchor = 0;
  double loss = 0.0;
  const DenseVector g_hat = spsa_batch_avg(objective, theta, batch,
                                           per_sample_seeds, cfg,
                                           &queries_theta, &loss);
  const DenseVector g_bar = spsa_batch_avg(objective, anchor.theta_bar, batch,
                                           per_sample_seeds, cfg,
                                           &queries_anchor);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    theta[k] -= eta * (g_hat[k] - g_bar[k] + anchor.g[k]);
  }
  StepReport report;
  report.kind = StepKind::kMinibatch;
  report.loss_before = loss;
  report.queries = queries_theta + queries_anchor;
  report.eta = eta;
  return report;
}

StepReport fo_sgd_step(const Objective& objective, ParamVector& theta,
                       const Minibatch& batch, double eta) {
  check_theta(objective, theta);
  check_eta(eta, "fo_sgd_step: eta");
  require(batch.size() >= 1, "fo_sgd_step: empty batch");
  batch.validate(objective.num_samples());
  if (!objective.has_gradient()) {
    throw UnsupportedOperation(objective.name() +
                               " has no analytic gradient for FO-SGD");
  }
  const double loss = objective.batch_loss(theta.view(), batch.indices);
  if (!std::isfinite(loss)) throw NonFiniteLoss("non-finite loss in FO-SGD");
  DenseVector grad(theta.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t index : batch.indices) {
    objective.add_gradient(theta.view(), index, scale, grad);
  }
  for (std::size_t k = 0; k < theta.size(); ++k) theta[k] -= eta * grad[k];
  StepReport report;
  report.kind = StepKind::kFo;
  report.loss_before = loss;
  report.queries = batch.size();
  report.backward = batch.size();
  report.eta = eta;
  return report;
}

}  // namespace zovr
