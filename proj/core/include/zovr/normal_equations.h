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

#ifndef ZOVR_NORMAL_EQUATIONS_H_
#define ZOVR_NORMAL_EQUATIONS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace zovr {

struct NormalEquationsSolution {
  std::vector<double> w_ls;
  // Mean squared residual (1/n)‖X w_ls − y‖².
  double f_star = 0.0;
};

// Solves (XᵀX) w = Xᵀy with a dense Cholesky factorization. X is n×d
// row-major. Throws SingularSystem if XᵀX is not positive definite.
// Shares no code with the optimizers.
NormalEquationsSolution solve_normal_equations(std::size_t n, std::size_t d,
                                               std::span<const double> x,
                                               std::span<const double> y);

}  // namespace zovr

#endif  // ZOVR_NORMAL_EQUATIONS_H_
