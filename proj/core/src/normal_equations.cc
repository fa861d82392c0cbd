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

#include "zovr/normal_equations.h"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "zovr/errors.h"

namespace zovr {

NormalEquationsSolution solve_normal_equations(std::size_t n, std::size_t d,
                                               std::span<const double> x,
                                               std::span<const double> y) {
  require(n >= 1 && d >= 1, "solve_normal_equations: empty system");
  require(x.size() == n * d && y.size() == n,
          "solve_normal_equations: shape mismatch");
  using RowMatrix =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMatrix> xm(x.data(), static_cast<Eigen::Index>(n),
                                       static_cast<Eigen::Index>(d));
  const Eigen::Map<const Eigen::VectorXd> ym(y.data(),
                                             static_cast<Eigen::Index>(n));

  const Eigen::MatrixXd gram = xm.transpose() * xm;
  const Eigen::VectorXd rhs = xm.transpose() * ym;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw SingularSystem("XᵀX is not positive definite");
  }
  // Reject numerically rank-deficient systems that still factor. Rounding
  // in a zero pivot shows up in L as its square root, so the cutoff on L's
  // diagonal is 1e-6 (1e-12 on the pivots).
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  if (diag.minCoeff() <= 1e-6 * diag.maxCoeff()) {
    throw SingularSystem("XᵀX is numerically singular");
  }
  const Eigen::VectorXd w = llt.solve(rhs);

  NormalEquationsSolution solution;
  solution.w_ls.assign(w.data(), w.data() + w.size());
  solution.f_star = (xm * w - ym).squaredNorm() / static_cast<double>(n);
  return solution;
}

}  // namespace zovr
