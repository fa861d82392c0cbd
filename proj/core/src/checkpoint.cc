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


#include "zovr/checkpoint.h"

#include <openssl/evp.h>
#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <iterator>

#include "binary_io.h"
#include "zovr/errors.h"

namespace zovr {
namespace binary {

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks.
  std::size_t offset = 0;
  while (offset < data.size()) {
    const std::size_t chunk = std::min<std::size_t>(data.size() - offset, 1u << 30);
    crc = ::crc32(crc, data.data() + offset, static_cast<uInt>(chunk));
    offset += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace binary

namespace {
constexpr char kMagic[5] = {'Z', 'O', 'P', 'R', 'M'};
}  // namespace

std::vector<std::uint8_t> encode_parameters(std::span<const double> theta) {
  binary::Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kCheckpointVersion);
  w.u64(theta.size());
  for (double v : theta) w.f64(v);
  w.u32(binary::crc32(w.buffer()));
  return std::move(w.buffer());
}

std::vector<double> decode_parameters(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) ||
      !std::equal(kMagic, kMagic + sizeof(kMagic), bytes.begin())) {
    throw FormatError("not a parameter checkpoint (bad magic)");
  }
  if (bytes.size() < sizeof(kMagic) + 4 + 8 + 4) {
    throw CorruptionError("parameter checkpoint truncated");
  }
  const auto body = bytes.first(bytes.size() - 4);
  binary::Reader tail(bytes.last(4));
  if (binary::crc32(body) != tail.u32()) {
    throw CorruptionError("parameter checkpoint checksum mismatch");
  }
  binary::Reader r(body);
  r.take(sizeof(kMagic));
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw VersionMismatch("parameter checkpoint version " +
                          std::to_string(version) + " is not supported");
  }
  const std::uint64_t d = r.u64();
  if (r.remaining() != d * 8) {
    throw CorruptionError("parameter checkpoint length does not match d");
  }
  std::vector<double> theta(d);
  for (double& v : theta) v = r.f64();
  return theta;
}

void save_parameters(const std::string& path, std::span<const double> theta) {
  binary::write_file(path, encode_parameters(theta));
}

std::vector<double> load_parameters(const std::string& path) {
  return decode_parameters(binary::read_file(path));
}

std::array<std::uint8_t, 32> parameter_digest(std::span<const double> theta) {
  binary::Writer w;
  for (double v : theta) w.f64(v);
  std::array<std::uint8_t, 32> digest{};
  unsigned int size = 0;
  if (EVP_Digest(w.buffer().data(), w.buffer().size(), digest.data(), &size,
                 EVP_sha256(), nullptr) != 1 ||
      size != digest.size()) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  return digest;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

}  // namespace zovr
