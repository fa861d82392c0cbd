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


#ifndef ZOVR_VERIFY_H_
#define ZOVR_VERIFY_H_

#include <string>
#include <vector>

namespace zovr {

struct OracleOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the built-in oracle checks on small generated instances: minibatch
// unbiasedness, control-variate identities, normal-equation optimality,
// perturbation restore, central-difference exactness and the variance
// comparison. Takes a few seconds.
std::vector<OracleOutcome> run_oracle_suite();

}  // namespace zovr

#endif  // ZOVR_VERIFY_H_
