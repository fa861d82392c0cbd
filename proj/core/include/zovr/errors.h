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

#ifndef ZOVR_ERRORS_H_
#define ZOVR_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zovr {

// A caller broke a documented precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A loss evaluation produced NaN or Inf. Steps abort instead of clamping.
class NonFiniteLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The objective cannot provide what was asked (e.g. an analytic gradient).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed on-disk data: bad magic, truncation, inconsistent counts.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checksum mismatch on a trajectory or checkpoint file.
class CorruptionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class VersionMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

// theta0 supplied to replay does not hash to the digest in the log header.
class DigestMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// XᵀX could not be factored.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace zovr

#endif  // ZOVR_ERRORS_H_
