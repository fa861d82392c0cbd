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

#ifndef ZOVR_DATASET_H_
#define ZOVR_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace zovr {

// Classification samples with features in [0, 1], stored row-major.
struct Dataset {
  std::size_t feature_dim = 0;
  std::size_t num_classes = 0;
  std::vector<float> features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const float> row(std::size_t i) const {
    return {features.data() + i * feature_dim, feature_dim};
  }
  // Throws ContractViolation on inconsistent shapes or out-of-range labels.
  void validate() const;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

// Reads an IDX image/label pair (big-endian headers, unsigned bytes).
// Pixels are scaled to [0, 1]; labels are 0..9 (num_classes = 10).
// max_samples = 0 keeps every sample. Throws FormatError on wrong magic,
// truncated payloads or image/label count mismatch.
Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::size_t max_samples = 0);

// Same, from in-memory file images.
Dataset parse_idx(std::span<const std::uint8_t> images,
                  std::span<const std::uint8_t> labels,
                  std::size_t max_samples = 0);

// Stand-in for MNIST with the same schema: each class has a fixed random
// binary template (about 20% of pixels lit); a sample is its class template
// plus N(0, 0.3²) pixel noise, clipped to [0, 1]. Labels cycle 0..classes−1.
Dataset make_synthetic_digits(std::size_t n, std::size_t rows,
                              std::size_t cols, std::size_t classes,
                              std::uint64_t seed);

// Text table: first line "n,d,classes", then "label,f1,…,fd" per sample.
void write_dataset_table(const Dataset& dataset, std::ostream& out);
Dataset read_dataset_table(std::istream& in);

}  // namespace zovr

#endif  // ZOVR_DATASET_H_
