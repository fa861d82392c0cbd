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


// Parameter checkpoint files: "ZOPRM", u32 version, u64 d, d little-endian
// f64 values, trailing CRC-32 of everything before it.

#ifndef ZOVR_CHECKPOINT_H_
#define ZOVR_CHECKPOINT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zovr {

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> encode_parameters(std::span<const double> theta);
// Throws FormatError (bad magic), CorruptionError (checksum, truncation) or
// VersionMismatch.
std::vector<double> decode_parameters(std::span<const std::uint8_t> bytes);

void save_parameters(const std::string& path, std::span<const double> theta);
std::vector<double> load_parameters(const std::string& path);

// SHA-256 of the little-endian IEEE-754 bytes of θ.
std::array<std::uint8_t, 32> parameter_digest(std::span<const double> theta);
std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace zovr

#endif  // ZOVR_CHECKPOINT_H_
