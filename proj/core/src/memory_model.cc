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


#include "zovr/memory_model.h"

#include "zovr/errors.h"

namespace zovr {

std::string to_string(AccountingMode mode) {
  switch (mode) {
    case AccountingMode::kStoreG:
      return "store_g";
    case AccountingMode::kRecomputeG:
      return "recompute_g";
    case AccountingMode::kNaiveSvrg:
      return "naive_svrg";
  }
  return "unknown";
}

AccountingMode parse_accounting_mode(const std::string& name) {
  if (name == "store_g") return AccountingMode::kStoreG;
  if (name == "recompute_g") return AccountingMode::kRecomputeG;
  if (name == "naive_svrg") return AccountingMode::kNaiveSvrg;
  throw ContractViolation("unknown accounting mode '" + name + "'");
}

std::size_t account_memory(const std::string& optimizer, AccountingMode mode,
                           std::size_t d) {
  require(d >= 1, "account_memory: d must be positive");
  if (optimizer == "mezo") return d + kOverheadSlots;
  if (optimizer == "fo-sgd") return 2 * d + kOverheadSlots;
  if (optimizer == "zo-svrg") return 5 * d + kOverheadSlots;
  if (optimizer == "mezo-svrg") {
    switch (mode) {
      case AccountingMode::kStoreG:
        return 3 * d + kOverheadSlots;
      case AccountingMode::kRecomputeG:
        return 2 * d + kOverheadSlots;
      case AccountingMode::kNaiveSvrg:
        return 5 * d + kOverheadSlots;
    }
  }
  throw ContractViolation("account_memory: unknown optimizer '" + optimizer +
                          "'");
}

std::size_t account_memory(const std::string& optimizer,
                           const std::string& mode, std::size_t d) {
  return account_memory(optimizer, parse_accounting_mode(mode), d);
}

}  // namespace zovr
