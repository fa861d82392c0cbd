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

#include "zovr/dataset.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <istream>
#include <ostream>
#include <sstream>

#include "zovr/errors.h"
#include "zovr/rng.h"

namespace zovr {
namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes,
                        std::size_t offset) {
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

std::vector<std::uint8_t> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string format_float(float value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

template <typename T>
T parse_number(const std::string& token, const char* what) {
  T value{};
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError(std::string("dataset table: bad ") + what + " '" +
                      token + "'");
  }
  return value;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream stream(line);
  while (std::getline(stream, part, ',')) parts.push_back(part);
  return parts;
}

}  // namespace

void Dataset::validate() const {
  require(feature_dim >= 1, "Dataset: feature_dim must be positive");
  require(num_classes >= 2, "Dataset: need at least two classes");
  require(!labels.empty(), "Dataset: empty");
  require(features.size() == labels.size() * feature_dim,
          "Dataset: features size does not match labels × feature_dim");
  for (int label : labels) {
    require(label >= 0 && static_cast<std::size_t>(label) < num_classes,
            "Dataset: label out of range");
  }
}

Dataset parse_idx(std::span<const std::uint8_t> images,
                  std::span<const std::uint8_t> labels,
                  std::size_t max_samples) {
  if (images.size() < 16) throw FormatError("IDX images: truncated header");
  if (labels.size() < 8) throw FormatError("IDX labels: truncated header");
  if (read_be32(images, 0) != kIdxImagesMagic) {
    throw FormatError("IDX images: bad magic number");
  }
  if (read_be32(labels, 0) != kIdxLabelsMagic) {
    throw FormatError("IDX labels: bad magic number");
  }
  const std::size_t count = read_be32(images, 4);
  const std::size_t rows = read_be32(images, 8);
  const std::size_t cols = read_be32(images, 12);
  const std::size_t label_count = read_be32(labels, 4);
  if (count != label_count) {
    throw FormatError("IDX: image count " + std::to_string(count) +
                      " != label count " + std::to_string(label_count));
  }
  const std::size_t pixels = rows * cols;
  if (pixels == 0) throw FormatError("IDX images: zero-sized images");
  if (images.size() - 16 < count * pixels) {
    throw FormatError("IDX images: truncated payload");
  }
  if (labels.size() - 8 < count) throw FormatError("IDX labels: truncated");

  const std::size_t keep =
      max_samples == 0 ? count : std::min(count, max_samples);
  Dataset dataset;
  dataset.feature_dim = pixels;
  dataset.num_classes = 10;
  dataset.features.resize(keep * pixels);
  dataset.labels.resize(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const std::uint8_t label = labels[8 + i];
    if (label > 9) throw FormatError("IDX labels: label out of range");
    dataset.labels[i] = label;
    for (std::size_t k = 0; k < pixels; ++k) {
      dataset.features[i * pixels + k] =
          static_cast<float>(images[16 + i * pixels + k]) / 255.0f;
    }
  }
  return dataset;
}

Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::size_t max_samples) {
  const std::vector<std::uint8_t> images = slurp(images_path);
  const std::vector<std::uint8_t> labels = slurp(labels_path);
  return parse_idx(images, labels, max_samples);
}

Dataset make_synthetic_digits(std::size_t n, std::size_t rows,
                              std::size_t cols, std::size_t classes,
                              std::uint64_t seed) {
  require(n >= 1 && rows >= 1 && cols >= 1 && classes >= 2,
          "make_synthetic_digits: bad shape");
  const std::size_t pixels = rows * cols;
  std::vector<float> templates(classes * pixels);
  UniformStream lit(seed, 1);
  for (float& v : templates) v = lit.next_unit() < 0.2 ? 1.0f : 0.0f;

  Dataset dataset;
  dataset.feature_dim = pixels;
  dataset.num_classes = classes;
  dataset.features.resize(n * pixels);
  dataset.labels.resize(n);
  NormalStream noise(seed, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = i % classes;
    dataset.labels[i] = static_cast<int>(label);
    for (std::size_t k = 0; k < pixels; ++k) {
      const double v = templates[label * pixels + k] + 0.3 * noise.next();
      dataset.features[i * pixels + k] =
          static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
  }
  return dataset;
}

void write_dataset_table(const Dataset& dataset, std::ostream& out) {
  dataset.validate();
  out << dataset.size() << ',' << dataset.feature_dim << ','
      << dataset.num_classes << '\n';
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out << dataset.labels[i];
    for (float v : dataset.row(i)) out << ',' << format_float(v);
    out << '\n';
  }
}

Dataset read_dataset_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("dataset table: empty");
  const std::vector<std::string> header = split_commas(line);
  if (header.size() != 3) throw FormatError("dataset table: bad header");
  const auto n = parse_number<std::size_t>(header[0], "n");
  Dataset dataset;
  dataset.feature_dim = parse_number<std::size_t>(header[1], "d");
  dataset.num_classes = parse_number<std::size_t>(header[2], "classes");
  dataset.features.reserve(n * dataset.feature_dim);
  dataset.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw FormatError("dataset table: truncated");
    const std::vector<std::string> cells = split_commas(line);
    if (cells.size() != dataset.feature_dim + 1) {
      throw FormatError("dataset table: row " + std::to_string(i) +
                        " has wrong width");
    }
    dataset.labels.push_back(parse_number<int>(cells[0], "label"));
    for (std::size_t k = 1; k < cells.size(); ++k) {
      dataset.features.push_back(parse_number<float>(cells[k], "feature"));
    }
  }
  dataset.validate();
  return dataset;
}

}  // namespace zovr
