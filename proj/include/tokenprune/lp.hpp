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

enum class FeasibilityStatus { kFeasible, kInfeasible };

/// Outcome of deciding {x >= 0 : A x = b}.
///
/// Exactly one alternative is reported:
///  - kFeasible: `witness` holds x >= 0 with ||A x - b||_inf <= tol (1 + ||b||_inf).
///  - kInfeasible: `certificate` holds y with A^T y >= -tol componentwise and
///    b^T y <= -tol, normalized to ||y||_inf = 1.
struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::kFeasible;
  std::vector<double> witness;
  std::vector<double> certificate;
  std::size_t iterations = 0;

  bool feasible() const noexcept { return status == FeasibilityStatus::kFeasible; }
};

/// Phase-1 simplex with Bland's rule. `a` is k x n, `b` has length k.
///
/// Throws kShapeMismatch or kNonFiniteEntry on bad input, kIterationLimit after
/// 50 (n + k) pivots, and kNumericalBreakdown when neither a witness nor a
/// certificate can be confirmed at the requested tolerance.
FeasibilityResult lp_feasible(const Matrix& a, std::span<const double> b, double tol = 1e-9);

/// ||A x - b||_inf <= tol (1 + ||b||_inf) and min(x) >= -tol.
bool is_valid_witness(const Matrix& a, std::span<const double> b, std::span<const double> x,
                      double tol);

/// A^T y >= -tol and b^T y <= -tol.
bool is_valid_certificate(const Matrix& a, std::span<const double> b, std::span<const double> y,
                          double tol);

}  // namespace tokenprune
