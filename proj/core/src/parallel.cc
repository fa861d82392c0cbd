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

#include "zovr/parallel.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

#include "zovr/errors.h"

namespace zovr {

std::size_t configured_threads() {
  const char* raw = std::getenv("ZOVR_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return 1;
  return value;
}

double evaluate_batch_loss(const Objective& objective,
                           std::span<const double> theta,
                           std::span<const std::size_t> indices,
                           std::size_t threads) {
  const std::size_t b = indices.size();
  require(b >= 1, "evaluate_batch_loss: empty batch");
  threads = std::min(threads, b);
  if (threads <= 1) return objective.batch_loss(theta, indices);

  std::vector<double> losses(b);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < b; k += threads) {
            losses[k] = objective.loss(theta, indices[k]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  double sum = 0.0;
  for (double value : losses) sum += value;
  return sum / static_cast<double>(b);
}

}  // namespace zovr
