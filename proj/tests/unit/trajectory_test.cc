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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "zovr/checkpoint.h"
#include "zovr/errors.h"
#include "zovr/least_squares.h"
#include "zovr/run.h"
#include "zovr/trajectory.h"

namespace zovr {
namespace {

using testing::CountingObjective;

struct Recorded {
  TrajectoryLog log;
  std::vector<std::vector<double>> thetas;  // thetas[t] = θ after t steps
  std::vector<double> theta0;
};

Recorded record_run(const Objective& obj, OptimizerId id, std::size_t steps,
                    std::uint64_t seed, bool schedule = false) {
  Recorded out;
  out.theta0.assign(obj.dimension(), 0.0);
  out.thetas.push_back(out.theta0);
  OptimizerSpec spec{id, {}};
  spec.config.b = 8;
  if (schedule) spec.config.eta1 = spec.config.eta2 = 0.2;
  RunOptions options;
  options.master_seed = seed;
  options.trajectory = &out.log;
  options.eval_every = 1000;
  if (schedule) options.lr_schedule = LrScheduleConfig{1.05, 5.0, 4};
  options.observer = [&](std::size_t, std::span<const double> theta) {
    out.thetas.emplace_back(theta.begin(), theta.end());
  };
  run(obj, out.theta0, spec, {steps, 0}, options);
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

TEST(TrajectoryLog, AppendRequiresContiguousSteps) {
  TrajectoryLog log;
  const double c[] = {1.0};
  log.append_step(0, RecordKind::kMinibatch, c);
  EXPECT_THROW(log.append_step(2, RecordKind::kMinibatch, c),
               ContractViolation);
  EXPECT_THROW(log.append_step(0, RecordKind::kMinibatch, c),
               ContractViolation);
  log.append_step(1, RecordKind::kMinibatch, c);
  EXPECT_EQ(log.num_steps(), 2u);
  EXPECT_THROW(log.append_step(2, RecordKind::kMinibatch, {}),
               ContractViolation);
}

TEST(TrajectoryLog, MezoSvrgMinibatchRecordsCarryTwoScalars) {
  const auto ls = make_least_squares(40, 5, 0.01, 1);
  const Recorded r = record_run(ls, OptimizerId::kMezoSvrg, 6, 3);
  ASSERT_EQ(r.log.records().size(), 6u);
  for (const StepRecord& rec : r.log.records()) {
    const bool anchor = rec.step % 2 == 0;
    EXPECT_EQ(rec.kind,
              anchor ? RecordKind::kFullbatch : RecordKind::kMinibatch);
    EXPECT_EQ(rec.values.size(), anchor ? 1u : 2u);
  }
}

TEST(Replay, ZeroStepsReturnsThetaZero) {
  const auto ls = make_least_squares(40, 5, 0.01, 2);
  const Recorded r = record_run(ls, OptimizerId::kMezo, 5, 4);
  const ParamVector theta = replay(r.log, r.theta0, 0);
  EXPECT_TRUE(bitwise_equal(theta.view(), r.theta0));
}

TEST(Replay, MezoRunReplaysBitExactlyWithoutQueries) {
  const auto ls = make_least_squares(300, 30, 0.01, 3);
  const Recorded r = record_run(ls, OptimizerId::kMezo, 200, 5);
  CountingObjective counted(ls);
  for (std::size_t t : {1u, 17u, 100u, 200u}) {
    const ParamVector theta = replay(r.log, r.theta0, t);
    EXPECT_TRUE(bitwise_equal(theta.view(), r.thetas[t])) << t;
  }
  EXPECT_EQ(counted.calls(), 0u);
}

TEST(Replay, MezoSvrgEveryPrefixMatchesTheLiveRun) {
  const auto ls = make_least_squares(100, 12, 0.01, 4);
  const Recorded r = record_run(ls, OptimizerId::kMezoSvrg, 40, 6);
  for (std::size_t t = 0; t <= 40; ++t) {
    EXPECT_TRUE(bitwise_equal(replay(r.log, r.theta0, t).view(), r.thetas[t]))
        << t;
  }
}

TEST(Replay, LearningRateEventsAreHonoured) {
  const auto ls = make_least_squares(100, 10, 0.01, 5);
  const Recorded r = record_run(ls, OptimizerId::kMezoSvrg, 200, 7, true);
  std::size_t events = 0;
  for (const StepRecord& rec : r.log.records()) {
    events += rec.kind == RecordKind::kLrEvent;
  }
  EXPECT_GT(events, 0u);
  EXPECT_EQ(r.log.num_steps(), 200u);
  EXPECT_TRUE(bitwise_equal(replay(r.log, r.theta0, 200).view(), r.thetas[200]));
}

TEST(Replay, BeyondLogLengthIsRangeError) {
  const auto ls = make_least_squares(40, 5, 0.01, 6);
  const Recorded r = record_run(ls, OptimizerId::kMezo, 3, 8);
  EXPECT_THROW(replay(r.log, r.theta0, 4), std::out_of_range);
}

TEST(Replay, WrongThetaZeroIsDigestMismatch) {
  const auto ls = make_least_squares(40, 5, 0.01, 7);
  const Recorded r = record_run(ls, OptimizerId::kMezo, 3, 9);
  std::vector<double> other = r.theta0;
  other[2] = 1e-300;
  EXPECT_THROW(replay(r.log, other, 1), DigestMismatch);
  EXPECT_THROW(replay(r.log, std::vector<double>(6, 0.0), 1), DigestMismatch);
}

TEST(Replay, UnsupportedVersionIsRejected) {
  const auto ls = make_least_squares(40, 5, 0.01, 8);
  Recorded r = record_run(ls, OptimizerId::kMezo, 3, 10);
  r.log.header().version = kTrajectoryVersion + 1;
  EXPECT_THROW(replay(r.log, r.theta0, 1), VersionMismatch);
}

TEST(TrajectoryHeader, OnlyZerothOrderOptimizersAreRecordable) {
  const std::vector<double> theta0(3, 0.0);
  EXPECT_THROW(make_trajectory_header(1, "fo-sgd", {}, 10, theta0),
               UnsupportedOperation);
  EXPECT_NO_THROW(make_trajectory_header(1, "mezo", {}, 10, theta0));
}

TEST(TrajectoryHeader, ConfigEntriesRoundTrip) {
  MezoSvrgConfig cfg;
  cfg.eta1 = 3e-3;
  cfg.eta2 = 7e-5;
  cfg.q = 5;
  cfg.b = 12;
  cfg.anchor_batch = 50;
  cfg.spsa.mu = 2.5e-4;
  cfg.sampling = SamplingMode::kWithReplacement;
  const MezoSvrgConfig back = config_from_entries(trajectory_config(cfg, 100));
  EXPECT_EQ(back.eta1, cfg.eta1);
  EXPECT_EQ(back.eta2, cfg.eta2);
  EXPECT_EQ(back.q, cfg.q);
  EXPECT_EQ(back.b, cfg.b);
  EXPECT_EQ(back.anchor_batch, cfg.anchor_batch);
  EXPECT_EQ(back.spsa.mu, cfg.spsa.mu);
  EXPECT_EQ(back.sampling, cfg.sampling);
}

TEST(TrajectoryFile, SaveLoadSaveIsByteIdentical) {
  const auto ls = make_least_squares(60, 6, 0.01, 9);
  const Recorded r = record_run(ls, OptimizerId::kMezoSvrg, 25, 11, true);
  const auto a = temp_file("zovr_traj_a.bin");
  const auto b = temp_file("zovr_traj_b.bin");
  save(r.log, a);
  const TrajectoryLog loaded = load(a);
  EXPECT_EQ(loaded, r.log);
  save(loaded, b);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(sa.substr(0, 5), "ZOTRJ");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(TrajectoryFile, EmptyRunRoundTrips) {
  const std::vector<double> theta0(4, 0.5);
  TrajectoryLog log(make_trajectory_header(3, "mezo", {}, 10, theta0));
  const TrajectoryLog back = deserialize(serialize(log));
  EXPECT_EQ(back, log);
  EXPECT_TRUE(back.records().empty());
}

TEST(TrajectoryFile, TruncationAndBitFlipsAreCorruption) {
  const auto ls = make_least_squares(60, 6, 0.01, 10);
  const Recorded r = record_run(ls, OptimizerId::kMezo, 10, 12);
  const std::vector<std::uint8_t> bytes = serialize(r.log);
  for (std::size_t cut : {bytes.size() - 1, bytes.size() / 2, std::size_t{6}}) {
    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.begin() + cut);
    EXPECT_THROW(deserialize(truncated), CorruptionError) << cut;
  }
  std::vector<std::uint8_t> flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  EXPECT_THROW(deserialize(flipped), CorruptionError);
  std::vector<std::uint8_t> bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize(bad_magic), FormatError);
}

TEST(TrajectoryFile, SizeIsLinearInStepsAndIndependentOfDimension) {
  auto bytes_for = [](std::size_t d, std::size_t steps) {
    const std::vector<double> theta0(d, 0.0);
    TrajectoryLog log(make_trajectory_header(1, "mezo", {}, 100, theta0));
    const double c[] = {0.5};
    for (std::size_t t = 0; t < steps; ++t) {
      log.append_step(t, RecordKind::kMinibatch, c);
    }
    return serialize(log).size();
  };
  const std::size_t header = bytes_for(10, 0);
  EXPECT_EQ(bytes_for(10, 1000), bytes_for(100000, 1000));
  const std::size_t per_step = (bytes_for(10, 1000) - header) / 1000;
  EXPECT_EQ(bytes_for(10, 2000) - header, 2 * (bytes_for(10, 1000) - header));
  EXPECT_LT(bytes_for(10, 1000), 64 * 1000 + header);
  EXPECT_LT(per_step, 64u);
}

TEST(TrajectoryFile, TenThousandStepsLoadQuickly) {
  const std::vector<double> theta0(100, 0.0);
  TrajectoryLog log(make_trajectory_header(1, "mezo-svrg", {}, 1000, theta0));
  for (std::size_t t = 0; t < 10000; ++t) {
    const double c[] = {0.1 * t, -0.1 * t};
    log.append_step(t, t % 2 ? RecordKind::kMinibatch : RecordKind::kFullbatch,
                    std::span<const double>(c, t % 2 ? 2 : 1));
  }
  const auto path = temp_file("zovr_traj_10k.bin");
  save(log, path);
  const auto start = std::chrono::steady_clock::now();
  const TrajectoryLog loaded = load(path);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  EXPECT_EQ(loaded.num_steps(), 10000u);
  EXPECT_LT(seconds, 1.0);
  std::filesystem::remove(path);
}

TEST(Checkpoint, RoundTripsExactly) {
  const std::vector<double> theta{0.0, -0.0, 1e-310, 3.141592653589793, -1e300};
  const std::vector<double> back = decode_parameters(encode_parameters(theta));
  EXPECT_TRUE(bitwise_equal(back, theta));
  const auto path = temp_file("zovr_ckpt.bin");
  save_parameters(path, theta);
  EXPECT_TRUE(bitwise_equal(load_parameters(path), theta));
  std::filesystem::remove(path);
}

TEST(Checkpoint, DetectsCorruption) {
  std::vector<std::uint8_t> bytes = encode_parameters(std::vector<double>(8, 1.5));
  std::vector<std::uint8_t> flipped = bytes;
  flipped[20] ^= 1;
  EXPECT_THROW(decode_parameters(flipped), CorruptionError);
  bytes.pop_back();
  EXPECT_THROW(decode_parameters(bytes), CorruptionError);
}

TEST(Checkpoint, DigestIsSha256OfTheEncodedValues) {
  // SHA-256 of zero bytes.
  EXPECT_EQ(to_hex(parameter_digest({})),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_NE(parameter_digest(std::vector<double>{0.0}),
            parameter_digest(std::vector<double>{-0.0}));
}

}  // namespace
}  // namespace zovr
