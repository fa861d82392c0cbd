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


#include "zovr/trajectory.h"

#include <algorithm>
#include <charconv>
#include <optional>
#include <stdexcept>

#include "binary_io.h"
#include "zovr/checkpoint.h"
#include "zovr/errors.h"
#include "zovr/seeds.h"

namespace zovr {
namespace {

constexpr char kMagic[5] = {'Z', 'O', 'T', 'R', 'J'};

std::string format_double(double v) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, ptr);
}

const std::string& lookup(const ConfigEntries& entries, const std::string& key) {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  throw FormatError("trajectory config is missing '" + key + "'");
}

template <typename T>
T parse(const ConfigEntries& entries, const std::string& key) {
  const std::string& text = lookup(entries, key);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("trajectory config: bad value for '" + key + "'");
  }
  return value;
}

// Hands out recorded coefficients in order while repeating the live run's
// perturbation arithmetic on θ. Never evaluates anything.
class RecordedEstimator final : public SharedEstimator {
 public:
  void load(std::span<const double> coeffs) {
    coeffs_.assign(coeffs.begin(), coeffs.end());
    next_ = 0;
  }
  bool exhausted() const { return next_ == coeffs_.size(); }

  GradientEstimate estimate(ParamVector& theta, const Minibatch&,
                            PerturbationSeed seed,
                            const SpsaConfig& cfg) override {
    if (coeffs_.size() - next_ < cfg.p) {
      throw FormatError("trajectory record has too few coefficients");
    }
    GradientEstimate out{seed, {}, theta.size(), 0};
    for (std::size_t j = 0; j < cfg.p; ++j) {
      central_difference(theta, seed.draw(j), cfg.mu,
                         [](std::span<const double>) { return 0.0; });
      out.coeffs.push_back(coeffs_[next_++]);
    }
    return out;
  }

 private:
  std::vector<double> coeffs_;
  std::size_t next_ = 0;
};

}  // namespace

void TrajectoryLog::append_step(std::uint64_t step, RecordKind kind,
                                std::span<const double> coeffs) {
  require(kind == RecordKind::kFullbatch || kind == RecordKind::kMinibatch,
          "append_step: not a step record kind");
  require(step == num_steps_, "trajectory: out-of-order append (expected step " +
                                  std::to_string(num_steps_) + ", got " +
                                  std::to_string(step) + ")");
  require(!coeffs.empty() && coeffs.size() <= 255,
          "trajectory: a record holds 1 to 255 coefficients");
  records_.push_back({step, kind, {coeffs.begin(), coeffs.end()}});
  ++num_steps_;
}

void TrajectoryLog::append_lr_event(double eta1, double eta2) {
  require(num_steps_ > 0, "trajectory: learning-rate event before any step");
  records_.push_back({num_steps_ - 1, RecordKind::kLrEvent, {eta1, eta2}});
}

ConfigEntries trajectory_config(const MezoSvrgConfig& cfg, std::size_t n) {
  return {
      {"n", std::to_string(n)},
      {"b", std::to_string(cfg.b)},
      {"anchor_batch", std::to_string(cfg.resolved_anchor_batch(n))},
      {"q", std::to_string(cfg.q)},
      {"eta1", format_double(cfg.eta1)},
      {"eta2", format_double(cfg.eta2)},
      {"mu", format_double(cfg.spsa.mu)},
      {"p", std::to_string(cfg.spsa.p)},
      {"sampling", cfg.sampling == SamplingMode::kWithReplacement
                       ? "with_replacement"
                       : "without_replacement"},
  };
}

MezoSvrgConfig config_from_entries(const ConfigEntries& entries) {
  MezoSvrgConfig cfg;
  cfg.b = parse<std::size_t>(entries, "b");
  cfg.anchor_batch = parse<std::size_t>(entries, "anchor_batch");
  cfg.q = parse<std::size_t>(entries, "q");
  cfg.eta1 = parse<double>(entries, "eta1");
  cfg.eta2 = parse<double>(entries, "eta2");
  cfg.spsa.mu = parse<double>(entries, "mu");
  cfg.spsa.p = parse<std::size_t>(entries, "p");
  const std::string& sampling = lookup(entries, "sampling");
  if (sampling == "with_replacement") {
    cfg.sampling = SamplingMode::kWithReplacement;
  } else if (sampling == "without_replacement") {
    cfg.sampling = SamplingMode::kWithoutReplacement;
  } else {
    throw FormatError("trajectory config: unknown sampling '" + sampling + "'");
  }
  return cfg;
}

TrajectoryHeader make_trajectory_header(std::uint64_t master_seed,
                                        const std::string& optimizer,
                                        const MezoSvrgConfig& cfg,
                                        std::size_t n,
                                        std::span<const double> theta0) {
  if (optimizer != "mezo" && optimizer != "mezo-svrg") {
    throw UnsupportedOperation("trajectory recording supports mezo and "
                               "mezo-svrg only, not " + optimizer);
  }
  TrajectoryHeader header;
  header.master_seed = master_seed;
  header.d = theta0.size();
  header.optimizer = optimizer;
  header.config = trajectory_config(cfg, n);
  header.theta0_digest = parameter_digest(theta0);
  return header;
}

void record(TrajectoryLog& log, const StepReport& report) {
  RecordKind kind;
  switch (report.kind) {
    case StepKind::kFullbatch:
      kind = RecordKind::kFullbatch;
      break;
    case StepKind::kMinibatch:
      kind = RecordKind::kMinibatch;
      break;
    default:
      throw UnsupportedOperation("first-order steps cannot be recorded");
  }
  log.append_step(report.step, kind, report.coeffs);
}

ParamVector replay(const TrajectoryLog& log, std::span<const double> theta0,
                   std::size_t upto) {
  const TrajectoryHeader& header = log.header();
  if (header.version != kTrajectoryVersion) {
    throw VersionMismatch("trajectory version " +
                          std::to_string(header.version) + " is not supported");
  }
  if (upto > log.num_steps()) {
    throw std::out_of_range("replay: step " + std::to_string(upto) +
                            " is beyond the " +
                            std::to_string(log.num_steps()) +
                            " recorded steps");
  }
  if (theta0.size() != header.d) {
    throw DigestMismatch("replay: theta0 has dimension " +
                         std::to_string(theta0.size()) + ", log expects " +
                         std::to_string(header.d));
  }
  if (parameter_digest(theta0) != header.theta0_digest) {
    throw DigestMismatch("replay: theta0 digest does not match the log");
  }
  const bool svrg = header.optimizer == "mezo-svrg";
  if (!svrg && header.optimizer != "mezo") {
    throw FormatError("replay: unknown optimizer '" + header.optimizer + "'");
  }
  MezoSvrgConfig cfg = config_from_entries(header.config);
  const std::size_t p = cfg.spsa.p;

  ParamVector theta(theta0);
  std::optional<SvrgAnchor> anchor;
  RecordedEstimator estimator;
  // The estimator ignores the batch; any valid one will do.
  const Minibatch placeholder{{0}, SamplingMode::kWithoutReplacement};
  std::size_t applied = 0;
  for (const StepRecord& rec : log.records()) {
    if (rec.kind == RecordKind::kLrEvent) {
      if (rec.values.size() != 2) throw FormatError("bad learning-rate event");
      cfg.eta1 = rec.values[0];
      cfg.eta2 = rec.values[1];
      continue;
    }
    if (applied == upto) break;
    const std::size_t t = rec.step;
    const PerturbationSeed seed = seeds::perturbation(header.master_seed, t);
    if (svrg) {
      const bool full = t % cfg.q == 0;
      const RecordKind expected =
          full ? RecordKind::kFullbatch : RecordKind::kMinibatch;
      if (rec.kind != expected || rec.values.size() != (full ? p : 2 * p)) {
        throw FormatError("replay: record " + std::to_string(t) +
                          " does not match the configured schedule");
      }
      estimator.load(rec.values);
      mezo_svrg_step(estimator, theta, anchor, placeholder, seed, cfg, t);
    } else {
      if (rec.kind != RecordKind::kMinibatch || rec.values.size() != p) {
        throw FormatError("replay: bad MeZO record at step " +
                          std::to_string(t));
      }
      estimator.load(rec.values);
      mezo_step(estimator, theta, placeholder, seed, cfg.eta1, cfg.spsa);
    }
    ++applied;
  }
  return theta;
}

std::vector<std::uint8_t> serialize(const TrajectoryLog& log) {
  const TrajectoryHeader& h = log.header();
  binary::Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(h.version);
  w.u64(h.master_seed);
  w.u64(h.d);
  w.str(h.optimizer);
  w.u32(static_cast<std::uint32_t>(h.config.size()));
  for (const auto& [key, value] : h.config) {
    w.str(key);
    w.str(value);
  }
  w.bytes(h.theta0_digest.data(), h.theta0_digest.size());
  w.u64(log.records().size());
  for (const StepRecord& rec : log.records()) {
    w.u64(rec.step);
    w.u8(static_cast<std::uint8_t>(rec.kind));
    w.u8(static_cast<std::uint8_t>(rec.values.size()));
    for (double v : rec.values) w.f64(v);
  }
  w.u32(binary::crc32(w.buffer()));
  return std::move(w.buffer());
}

TrajectoryLog deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) ||
      !std::equal(kMagic, kMagic + sizeof(kMagic), bytes.begin())) {
    throw FormatError("not a trajectory file (bad magic)");
  }
  if (bytes.size() < sizeof(kMagic) + 8) {
    throw CorruptionError("trajectory file truncated");
  }
  const auto body = bytes.first(bytes.size() - 4);
  binary::Reader tail(bytes.last(4));
  if (binary::crc32(body) != tail.u32()) {
    throw CorruptionError("trajectory checksum mismatch");
  }
  binary::Reader r(body);
  r.take(sizeof(kMagic));
  TrajectoryHeader header;
  header.version = r.u32();
  if (header.version != kTrajectoryVersion) {
    throw VersionMismatch("trajectory version " +
                          std::to_string(header.version) + " is not supported");
  }
  header.master_seed = r.u64();
  header.d = r.u64();
  header.optimizer = r.str();
  const std::uint32_t entries = r.u32();
  for (std::uint32_t k = 0; k < entries; ++k) {
    std::string key = r.str();
    std::string value = r.str();
    header.config.emplace_back(std::move(key), std::move(value));
  }
  const auto digest = r.take(header.theta0_digest.size());
  std::copy(digest.begin(), digest.end(), header.theta0_digest.begin());

  TrajectoryLog log(std::move(header));
  const std::uint64_t count = r.u64();
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t step = r.u64();
    const auto kind = static_cast<RecordKind>(r.u8());
    const std::uint8_t n = r.u8();
    std::vector<double> values(n);
    for (double& v : values) v = r.f64();
    try {
      if (kind == RecordKind::kLrEvent) {
        if (n != 2 || log.num_steps() == 0 || step + 1 != log.num_steps()) {
          throw FormatError("bad learning-rate event");
        }
        log.append_lr_event(values[0], values[1]);
      } else if (kind == RecordKind::kFullbatch ||
                 kind == RecordKind::kMinibatch) {
        log.append_step(step, kind, values);
      } else {
        throw FormatError("unknown record kind");
      }
    } catch (const ContractViolation& e) {
      throw FormatError(std::string("trajectory records: ") + e.what());
    }
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes in trajectory");
  return log;
}

void save(const TrajectoryLog& log, const std::string& path) {
  binary::write_file(path, serialize(log));
}

TrajectoryLog load(const std::string& path) {
  return deserialize(binary::read_file(path));
}

}  // namespace zovr
