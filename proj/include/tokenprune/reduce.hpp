// Copyright 2026 The tokenprune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tokenprune/core.hpp"

namespace tokenprune {

/// Thin SVD of a document viewed as the d x n matrix whose columns are tokens:
/// D = U diag(sigma) V^T with U d x m, V n x m, m = min(d, n).
struct SvdFactors {
  Matrix u;
  std::vector<double> sigma;  // non-increasing, >= 0
  Matrix v;
};

/// One-sided Jacobi SVD. Columns belonging to zero singular values are
/// completed to an orthonormal basis. Throws kEmptyDocument when n = 0 and
/// kConvergenceFailure when the sweep limit is hit.
SvdFactors svd(const TokenMatrix& doc, double tol = 1e-12);

/// Same factorization for a bare n x d row matrix (rows are tokens).
SvdFactors svd_rows(const Matrix& rows, double tol = 1e-12);

/// Smallest k whose leading singular values cover at least `theta_lp` of the
/// total mass; 0 when every singular value is 0.
std::size_t select_rank(std::span<const double> sigma, double theta_lp);

/// k x n matrix diag(sigma_1..k) [v_1^(k) ... v_n^(k)], one column per token.
/// Its Gram matrix approximates the token Gram matrix and equals it when k = m.
Matrix reduced_document(const TokenMatrix& doc, double theta_lp, double tol = 1e-12);

}  // namespace tokenprune
