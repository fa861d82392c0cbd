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


#include "zovr/oracles.h"

#include <algorithm>
#include <cmath>

#include "zovr/errors.h"
#include "zovr/minibatch.h"
#include "zovr/rng.h"

namespace zovr {
namespace {

// c·z(seed) as an untracked vector.
std::vector<double> direction_times(PerturbationSeed seed, double c,
                                    std::size_t d) {
  std::vector<double> out(d);
  NormalStream stream(seed.seed, seed.stream_offset);
  for (double& v : out) v = c * stream.next();
  return out;
}

// Shared-direction coefficient over `indices`, computed on a scratch copy so
// the caller's θ is never perturbed.
double shared_coeff(const Objective& objective, std::span<const double> theta,
                    std::vector<std::size_t> indices, PerturbationSeed seed,
                    const SpsaConfig& cfg) {
  ParamVector scratch(theta);
  Minibatch batch{std::move(indices), SamplingMode::kWithoutReplacement};
  SpsaConfig single = cfg;
  single.p = 1;
  return spsa_batch_shared(objective, scratch, batch, seed, single).coeff();
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double unbiasedness_check(const Objective& objective,
                          std::span<const double> theta,
                          PerturbationSeed z_seed, std::size_t b,
                          const SpsaConfig& cfg) {
  const std::size_t n = objective.num_samples();
  const std::size_t d = objective.dimension();
  require(n <= 12, "unbiasedness_check: n must be <= 12");
  require(b >= 1 && b <= n, "unbiasedness_check: need 1 <= b <= n");
  require(theta.size() == d, "unbiasedness_check: dimension mismatch");

  // Per-sample coefficients along the shared z. A minibatch estimate is
  // their mean over the batch, so every subset reuses the same differences
  // and only the reordering is under test.
  std::vector<double> coeff(n);
  for (std::size_t i = 0; i < n; ++i) {
    ParamVector scratch(theta);
    SpsaConfig single = cfg;
    single.p = 1;
    coeff[i] = spsa_sample(objective, scratch, i, z_seed, single).coeff();
  }
  auto mean_over = [&](const std::vector<std::size_t>& indices) {
    double s = 0.0;
    for (std::size_t i : indices) s += coeff[i];
    return s / static_cast<double>(indices.size());
  };

  double average = 0.0;
  std::size_t subsets = 0;
  // Lexicographic walk over b-combinations of [n].
  std::vector<std::size_t> pick(b);
  for (std::size_t k = 0; k < b; ++k) pick[k] = k;
  while (true) {
    average += mean_over(pick);
    ++subsets;
    std::size_t k = b;
    while (k > 0 && pick[k - 1] == n - b + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < b; ++j) pick[j] = pick[j - 1] + 1;
  }
  average /= static_cast<double>(subsets);

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const std::vector<double> full = direction_times(z_seed, mean_over(all), d);
  const std::vector<double> enumerated = direction_times(z_seed, average, d);
  std::vector<double> diff(d);
  for (std::size_t k = 0; k < d; ++k) diff[k] = enumerated[k] - full[k];
  const double scale = norm_inf(full);
  return scale > 0.0 ? norm_inf(diff) / scale : norm_inf(diff);
}

ControlVariateReport control_variate_check(
    const Objective& objective, std::span<const double> theta,
    std::span<const double> theta_prime, PerturbationSeed z_seed,
    const ControlVariateOptions& options) {
  const std::size_t n = objective.num_samples();
  const std::size_t d = objective.dimension();
  require(n <= 64, "control_variate_check: n must be <= 64");
  require(theta.size() == d && theta_prime.size() == d,
          "control_variate_check: dimension mismatch");
  require(options.repeats >= 1, "control_variate_check: repeats must be >= 1");

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const std::vector<double> full_theta = direction_times(
      z_seed, shared_coeff(objective, theta, all, z_seed, options.spsa), d);
  const std::vector<double> full_prime = direction_times(
      z_seed, shared_coeff(objective, theta_prime, all, z_seed, options.spsa),
      d);

  std::vector<std::vector<double>> u(n);
  ControlVariateReport report;
  std::vector<double> sum(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> at_theta = direction_times(
        z_seed, shared_coeff(objective, theta, {i}, z_seed, options.spsa), d);
    const std::vector<double> at_prime = direction_times(
        z_seed, shared_coeff(objective, theta_prime, {i}, z_seed, options.spsa),
        d);
    u[i].resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      u[i][k] = at_theta[k] - at_prime[k] - (full_theta[k] - full_prime[k]);
      sum[k] += u[i][k];
    }
    report.max_u_norm_inf = std::max(report.max_u_norm_inf, norm_inf(u[i]));
  }
  report.sum_norm_inf = norm_inf(sum);

  // Gram matrix of the uᵢ; every pairwise moment below reads from it.
  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += u[i][k] * u[j][k];
      gram[i * n + j] = s;
    }
  }
  // Mean of uᵢ·uⱼ over all n² ordered pairs, reduced to ‖(1/n)Σuᵢ‖².
  double population = 0.0;
  for (double v : sum) {
    const double m = v / static_cast<double>(n);
    population += m * m;
  }
  report.population_moment = population;

  for (std::size_t m : options.sample_counts) {
    require(m >= 1, "control_variate_check: sample counts must be positive");
    double mean_magnitude = 0.0;
    for (std::size_t r = 0; r < options.repeats; ++r) {
      UniformStream pairs(options.sampling_seed, (m << 8) + r);
      double moment = 0.0;
      for (std::size_t s = 0; s < m; ++s) {
        const std::size_t i = pairs.next_below(n);
        const std::size_t j = pairs.next_below(n);
        moment += gram[i * n + j];
      }
      mean_magnitude += std::abs(moment / static_cast<double>(m));
    }
    report.cross_moments.emplace_back(
        m, mean_magnitude / static_cast<double>(options.repeats));
  }
  return report;
}

NormalEquationsSolution ls_normal_equations(const LeastSquaresProblem& problem) {
  return solve_normal_equations(problem.num_samples(), problem.dimension(),
                                problem.x(), problem.y());
}

VarianceProbe estimator_variance_probe(const Objective& objective,
                                       std::span<const double> theta,
                                       std::span<const double> theta_bar,
                                       std::size_t b, std::size_t num_seeds,
                                       std::uint64_t seed,
                                       const SpsaConfig& cfg) {
  const std::size_t n = objective.num_samples();
  const std::size_t d = objective.dimension();
  require(num_seeds >= 100, "estimator_variance_probe: need >= 100 seeds");
  require(b >= 1 && b <= n, "estimator_variance_probe: need 1 <= b <= n");
  require(theta.size() == d && theta_bar.size() == d,
          "estimator_variance_probe: dimension mismatch");

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<std::vector<double>> plain(num_seeds);
  std::vector<std::vector<double>> blended(num_seeds);
  for (std::size_t s = 0; s < num_seeds; ++s) {
    const Minibatch batch = sample_minibatch(
        n, b, SamplingMode::kWithoutReplacement, philox_hash(seed, s, 1));
    const PerturbationSeed z{philox_hash(seed, s, 2), 0};
    const PerturbationSeed anchor_z{philox_hash(seed, s, 3), 0};
    const double c_theta =
        shared_coeff(objective, theta, batch.indices, z, cfg);
    const double c_bar =
        shared_coeff(objective, theta_bar, batch.indices, z, cfg);
    const double c_anchor =
        shared_coeff(objective, theta_bar, all, anchor_z, cfg);
    plain[s] = direction_times(z, c_theta, d);
    const std::vector<double> g = direction_times(anchor_z, c_anchor, d);
    blended[s] = direction_times(z, c_theta - c_bar, d);
    for (std::size_t k = 0; k < d; ++k) blended[s][k] += g[k];
  }

  auto trace_stats = [&](const std::vector<std::vector<double>>& samples,
                         double& trace, double& se) {
    const double count = static_cast<double>(samples.size());
    std::vector<double> mean(d, 0.0);
    for (const auto& v : samples) {
      for (std::size_t k = 0; k < d; ++k) mean[k] += v[k];
    }
    for (double& m : mean) m /= count;
    // Per-sample squared deviations; their mean is the biased trace.
    std::vector<double> dev(samples.size());
    double total = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double e = samples[s][k] - mean[k];
        sq += e * e;
      }
      dev[s] = sq;
      total += sq;
    }
    trace = total / (count - 1.0);
    const double mean_dev = total / count;
    double var = 0.0;
    for (double x : dev) var += (x - mean_dev) * (x - mean_dev);
    var /= count - 1.0;
    se = std::sqrt(var / count);
  };

  VarianceProbe probe;
  probe.samples = num_seeds;
  trace_stats(plain, probe.plain_trace, probe.plain_se);
  trace_stats(blended, probe.blended_trace, probe.blended_se);
  return probe;
}

double spsa_mean_error(const Objective& objective, std::span<const double> theta,
                       std::size_t draws, std::uint64_t seed,
                       const SpsaConfig& cfg) {
  require(draws >= 1, "spsa_mean_error: draws must be positive");
  const std::size_t n = objective.num_samples();
  const std::size_t d = objective.dimension();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<double> mean(d, 0.0);
  for (std::size_t s = 0; s < draws; ++s) {
    const PerturbationSeed z{philox_hash(seed, s, 7), 0};
    const double c = shared_coeff(objective, theta, all, z, cfg);
    const std::vector<double> est = direction_times(z, c, d);
    for (std::size_t k = 0; k < d; ++k) mean[k] += est[k];
  }
  const std::vector<double> grad = full_gradient(objective, theta);
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double m = mean[k] / static_cast<double>(draws);
    err += (m - grad[k]) * (m - grad[k]);
    ref += grad[k] * grad[k];
  }
  return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
}

}  // namespace zovr
