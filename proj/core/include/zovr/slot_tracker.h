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

// Process-wide accounting of live parameter-sized float slots.
//
// Every d-length buffer an optimizer owns (parameters, anchor copies,
// gradient accumulators) is allocated through TrackedAllocator, so the
// measured peak can be checked against the analytic memory model.
// Evaluation-only scratch (loss curves, gradient norms for reporting) uses
// plain std::vector and is deliberately invisible here.

#ifndef ZOVR_SLOT_TRACKER_H_
#define ZOVR_SLOT_TRACKER_H_

#include <cstddef>
#include <new>
#include <vector>

namespace zovr {

namespace slot_tracker {

void on_allocate(std::size_t slots);
void on_deallocate(std::size_t slots);

std::size_t live();
std::size_t peak();
// Resets the high-water mark to the current live count.
void reset_peak();

}  // namespace slot_tracker

template <typename T>
class TrackedAllocator {
 public:
  using value_type = T;

  TrackedAllocator() noexcept = default;
  template <typename U>
  TrackedAllocator(const TrackedAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) {
    T* p = static_cast<T*>(::operator new(count * sizeof(T)));
    slot_tracker::on_allocate(count);
    return p;
  }

  void deallocate(T* p, std::size_t count) noexcept {
    slot_tracker::on_deallocate(count);
    ::operator delete(p);
  }

  template <typename U>
  bool operator==(const TrackedAllocator<U>&) const noexcept {
    return true;
  }
};

// Dense d-length working vector counted by the slot tracker.
using DenseVector = std::vector<double, TrackedAllocator<double>>;

}  // namespace zovr

#endif  // ZOVR_SLOT_TRACKER_H_
