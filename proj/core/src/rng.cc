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

#include "zovr/rng.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "zovr/errors.h"

namespace zovr {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

PhiloxKey key_from_seed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
}

PhiloxCounter counter_from(std::uint64_t block, std::uint64_t stream) {
  return {static_cast<std::uint32_t>(block),
          static_cast<std::uint32_t>(block >> 32),
          static_cast<std::uint32_t>(stream),
          static_cast<std::uint32_t>(stream >> 32)};
}

std::array<std::uint64_t, 2> block_bits(const PhiloxKey& key,
                                        std::uint64_t block,
                                        std::uint64_t stream) {
  const PhiloxCounter out = philox4x32(counter_from(block, stream), key);
  return {(static_cast<std::uint64_t>(out[1]) << 32) | out[0],
          (static_cast<std::uint64_t>(out[3]) << 32) | out[2]};
}

void box_muller(const std::array<std::uint64_t, 2>& bits, double out[2]) {
  const double u1 = bits_to_open_unit(bits[0]);
  const double u2 = bits_to_open_unit(bits[1]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  out[0] = radius * std::cos(angle);
  out[1] = radius * std::sin(angle);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t philox_hash(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b) {
  return block_bits(key_from_seed(seed), a, b)[0];
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t start_index)
    : key_(key_from_seed(seed)),
      stream_(stream),
      index_(start_index),
      cached_block_(std::numeric_limits<std::uint64_t>::max()),
      cached_{0.0, 0.0} {}

void NormalStream::fill(std::uint64_t block) {
  box_muller(block_bits(key_, block, stream_), cached_);
  cached_block_ = block;
}

double NormalStream::next() {
  const std::uint64_t block = index_ >> 1;
  if (block != cached_block_) fill(block);
  return cached_[index_++ & 1];
}

double normal_at(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index) {
  double pair[2];
  box_muller(block_bits(key_from_seed(seed), index >> 1, stream), pair);
  return pair[index & 1];
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t stream)
    : key_(key_from_seed(seed)), stream_(stream) {}

std::uint64_t UniformStream::next_u64() {
  if (available_ == 0) {
    buffer_ = block_bits(key_, block_++, stream_);
    available_ = 2;
  }
  return buffer_[2 - available_--];
}

std::uint64_t UniformStream::next_below(std::uint64_t bound) {
  require(bound > 0, "UniformStream::next_below: bound must be positive");
  // Reject the low tail so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double UniformStream::next_unit() { return bits_to_open_unit(next_u64()); }

}  // namespace zovr
