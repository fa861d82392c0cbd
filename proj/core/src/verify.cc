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


#include "zovr/verify.h"

#include <algorithm>
#include <cmath>

#include "zovr/estimators.h"
#include "zovr/least_squares.h"
#include "zovr/logistic.h"
#include "zovr/oracles.h"
#include "zovr/rng.h"
#include "zovr/run_record.h"

namespace zovr {
namespace {

std::vector<double> normal_vector(std::size_t d, std::uint64_t seed,
                                  double scale = 1.0) {
  std::vector<double> v(d);
  NormalStream stream(seed, 0);
  for (double& x : v) x = scale * stream.next();
  return v;
}

OracleOutcome minibatch_unbiasedness() {
  const LeastSquaresProblem ls = make_least_squares(6, 5, 0.1, 11);
  double worst = 0.0;
  for (std::size_t b = 1; b <= 3; ++b) {
    for (std::uint64_t probe = 0; probe < 10; ++probe) {
      const auto theta = normal_vector(5, 100 + probe);
      worst = std::max(worst, unbiasedness_check(ls, theta, {200 + probe, 0}, b));
    }
  }
  return {"minibatch unbiasedness (n=6, b=1..3)", worst < 1e-12,
          "max relative deviation " + format_double(worst)};
}

template <typename Problem>
OracleOutcome control_variates(const std::string& name, const Problem& problem) {
  const std::size_t d = problem.dimension();
  const auto theta = normal_vector(d, 31);
  const auto theta_prime = normal_vector(d, 32);
  const ControlVariateReport r =
      control_variate_check(problem, theta, theta_prime, {33, 0});
  const double drop = r.cross_moments.front().second /
                      r.cross_moments.back().second;
  const bool ok = r.sum_norm_inf < 1e-10 * r.max_u_norm_inf && drop >= 3.0;
  return {"control variate identities (" + name + ")", ok,
          "|sum u|_inf=" + format_double(r.sum_norm_inf) +
              " max|u|_inf=" + format_double(r.max_u_norm_inf) +
              " cross-moment drop x" + format_double(drop)};
}

OracleOutcome normal_equations() {
  const LeastSquaresProblem ls = make_least_squares(1000, 100, 0.01, 1);
  const NormalEquationsSolution sol = ls_normal_equations(ls);
  const std::vector<double> grad = full_gradient(ls, sol.w_ls);
  double worst = 0.0;
  for (double g : grad) worst = std::max(worst, std::abs(g));
  return {"normal-equation optimality", worst < 1e-8,
          "|grad f(w_ls)|_inf=" + format_double(worst) +
              " f*=" + format_double(sol.f_star)};
}

OracleOutcome restore() {
  constexpr std::size_t kDim = 100000;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto original = normal_vector(kDim, 500 + s);
    ParamVector theta(original);
    const PerturbationSeed seed{600 + s, 0};
    const double mu = 1e-3;
    perturb_in_place(theta, seed, 1, mu);
    perturb_in_place(theta, seed, -2, mu);
    perturb_in_place(theta, seed, 1, mu);
    NormalStream z(seed.seed, seed.stream_offset);
    for (std::size_t k = 0; k < kDim; ++k) {
      const double scale = std::max(std::abs(original[k]), mu * std::abs(z.next()));
      worst = std::max(worst, std::abs(theta[k] - original[k]) / scale);
    }
  }
  return {"in-place perturbation restore", worst <= 1e-12,
          "max scaled error " + format_double(worst)};
}

OracleOutcome central_difference_exactness() {
  const LeastSquaresProblem ls = make_least_squares(40, 8, 0.1, 3);
  double worst = 0.0;
  for (std::uint64_t probe = 0; probe < 20; ++probe) {
    ParamVector theta(normal_vector(8, 700 + probe));
    const Minibatch batch = sample_minibatch(40, 5, SamplingMode::kWithoutReplacement,
                                             800 + probe);
    const PerturbationSeed seed{900 + probe, 0};
    const double coeff = spsa_batch_shared(ls, theta, batch, seed, {}).coeff();
    std::vector<double> grad(8, 0.0);
    for (std::size_t i : batch.indices) ls.add_gradient(theta.view(), i, 0.2, grad);
    const auto z = regenerate_z(seed, 8);
    double exact = 0.0;
    for (std::size_t k = 0; k < 8; ++k) exact += grad[k] * z[k];
    worst = std::max(worst, std::abs(coeff - exact) / (1.0 + std::abs(exact)));
  }
  return {"central-difference exactness on quadratics", worst < 1e-9,
          "max error " + format_double(worst)};
}

OracleOutcome variance() {
  const LeastSquaresProblem ls = make_least_squares(256, 20, 0.01, 5);
  // θ near the optimum with a fresh anchor θ̄ = θ.
  std::vector<double> theta(ls.w_ls().begin(), ls.w_ls().end());
  const auto offset = normal_vector(20, 41, 1e-3);
  for (std::size_t k = 0; k < 20; ++k) theta[k] += offset[k];
  const std::vector<double> theta_bar = theta;
  const VarianceProbe p =
      estimator_variance_probe(ls, theta, theta_bar, 8, 1000, 42);
  const double margin = 3.0 * std::hypot(p.plain_se, p.blended_se);
  return {"variance reduction of the blended direction",
          p.blended_trace + margin < p.plain_trace,
          "plain=" + format_double(p.plain_trace) +
              " blended=" + format_double(p.blended_trace) +
              " 3sigma=" + format_double(margin)};
}

}  // namespace

std::vector<OracleOutcome> run_oracle_suite() {
  std::vector<OracleOutcome> out;
  out.push_back(minibatch_unbiasedness());
  out.push_back(control_variates("ls", make_least_squares(32, 6, 0.1, 21)));
  out.push_back(control_variates("logistic", make_logistic(32, 6, 2.0, 22)));
  out.push_back(normal_equations());
  out.push_back(restore());
  out.push_back(central_difference_exactness());
  out.push_back(variance());
  return out;
}

}  // namespace zovr
