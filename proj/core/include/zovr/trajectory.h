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


// Seed-replay trajectories.
//
// A run of MeZO or MeZO-SVRG is fully determined by its master seed, its
// configuration, θ₀ and the SPSA coefficient(s) of every step. The log keeps
// exactly that, a constant number of bytes per step independent of d, and
// replay rebuilds θ_t without evaluating any objective.
//
// File layout (little-endian):
//   "ZOTRJ" | u32 version | u64 master_seed | u64 d | str optimizer
//   | u32 count, (str key, str value)* | u8[32] SHA-256(θ₀)
//   | u64 record count | records | u32 CRC-32 of all preceding bytes
// where str is a u32 length followed by bytes and a record is
//   u64 step | u8 kind | u8 n | f64[n].
// Learning-rate events (kind 3) carry (η₁, η₂) in effect from the next step
// on and repeat the step index of the record they follow.

#ifndef ZOVR_TRAJECTORY_H_
#define ZOVR_TRAJECTORY_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zovr/optimizers.h"
#include "zovr/param_vector.h"

namespace zovr {

inline constexpr std::uint32_t kTrajectoryVersion = 1;

enum class RecordKind : std::uint8_t {
  kFullbatch = 0,
  kMinibatch = 1,
  kLrEvent = 3,
};

struct StepRecord {
  std::uint64_t step = 0;
  RecordKind kind = RecordKind::kMinibatch;
  std::vector<double> values;

  bool operator==(const StepRecord&) const = default;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

struct TrajectoryHeader {
  std::uint32_t version = kTrajectoryVersion;
  std::uint64_t master_seed = 0;
  std::uint64_t d = 0;
  std::string optimizer;  // "mezo" or "mezo-svrg"
  ConfigEntries config;
  std::array<std::uint8_t, 32> theta0_digest{};

  bool operator==(const TrajectoryHeader&) const = default;
};

class TrajectoryLog {
 public:
  TrajectoryLog() = default;
  explicit TrajectoryLog(TrajectoryHeader header) : header_(std::move(header)) {}

  const TrajectoryHeader& header() const { return header_; }
  TrajectoryHeader& header() { return header_; }
  const std::vector<StepRecord>& records() const { return records_; }

  // Appends a step record. The step index must be one past the previous
  // step record (0 for the first); anything else is a ContractViolation.
  void append_step(std::uint64_t step, RecordKind kind,
                   std::span<const double> coeffs);
  void append_lr_event(double eta1, double eta2);

  std::size_t num_steps() const { return num_steps_; }

  bool operator==(const TrajectoryLog&) const = default;

 private:
  TrajectoryHeader header_;
  std::vector<StepRecord> records_;
  std::size_t num_steps_ = 0;
};

// Serializes the optimizer settings the replay needs.
ConfigEntries trajectory_config(const MezoSvrgConfig& cfg, std::size_t n);
MezoSvrgConfig config_from_entries(const ConfigEntries& entries);

// Builds the header for a run about to start from θ₀. Only "mezo" and
// "mezo-svrg" can be recorded; other names throw UnsupportedOperation.
TrajectoryHeader make_trajectory_header(std::uint64_t master_seed,
                                        const std::string& optimizer,
                                        const MezoSvrgConfig& cfg,
                                        std::size_t n,
                                        std::span<const double> theta0);

// Appends the record for a completed step.
void record(TrajectoryLog& log, const StepReport& report);

// θ after `upto` recorded steps. Throws DigestMismatch if θ₀ does not match
// the header, std::out_of_range if upto exceeds the log, and FormatError on
// records inconsistent with the configuration.
ParamVector replay(const TrajectoryLog& log, std::span<const double> theta0,
                   std::size_t upto);

std::vector<std::uint8_t> serialize(const TrajectoryLog& log);
// Throws FormatError (bad magic), CorruptionError (checksum or truncation)
// or VersionMismatch.
TrajectoryLog deserialize(std::span<const std::uint8_t> bytes);

void save(const TrajectoryLog& log, const std::string& path);
TrajectoryLog load(const std::string& path);

}  // namespace zovr

#endif  // ZOVR_TRAJECTORY_H_
