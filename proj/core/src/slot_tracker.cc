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

#include "zovr/slot_tracker.h"

#include <atomic>

namespace zovr::slot_tracker {
namespace {

std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};

}  // namespace

void on_allocate(std::size_t slots) {
  const std::size_t now = g_live.fetch_add(slots) + slots;
  std::size_t seen = g_peak.load();
  while (now > seen && !g_peak.compare_exchange_weak(seen, now)) {
  }
}

void on_deallocate(std::size_t slots) { g_live.fetch_sub(slots); }

std::size_t live() { return g_live.load(); }

std::size_t peak() { return g_peak.load(); }

void reset_peak() { g_peak.store(g_live.load()); }

}  // namespace zovr::slot_tracker
