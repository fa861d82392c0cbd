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

// Counter-based random streams.
//
// Every random quantity in the library comes from Philox4x32-10 keyed by a
// 64-bit seed. A block counter addresses 128-bit output blocks, so any
// element of a stream can be produced without generating its predecessors,
// and the same (seed, stream, index) yields the same bits on every run.
//
// Normal variates use Box–Muller on pairs of 53-bit uniforms in (0, 1):
// block k of stream s gives z[2k] = r·cos(2πu₂) and z[2k+1] = r·sin(2πu₂)
// with r = sqrt(−2 ln u₁). Bit-exactness across machines additionally needs
// the same libm; within one build it is exact.

#ifndef ZOVR_RNG_H_
#define ZOVR_RNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace zovr {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Ten-round Philox4x32 bijection (Salmon et al., Random123).
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Stateless 64-bit hash of (seed, a, b) built on one Philox block.
std::uint64_t philox_hash(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0);

// Maps 64 random bits to a double in the open interval (0, 1). Keeps 52
// bits so that k + ½ is exact and the top value stays below 1.
inline double bits_to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Sequential reader over the normal stream (seed, stream). Stateless apart
// from the cursor, so two readers with equal arguments agree bit-for-bit.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream,
               std::uint64_t start_index = 0);

  double next();

 private:
  void fill(std::uint64_t block);

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t index_;
  std::uint64_t cached_block_;
  double cached_[2];
};

// Random-access form of NormalStream.
double normal_at(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index);

// Uniform 64-bit integers from (seed, stream).
class UniformStream {
 public:
  UniformStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Unbiased integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);
  double next_unit();

 private:
  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

}  // namespace zovr

#endif  // ZOVR_RNG_H_
