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

#include <optional>
#include <span>
#include <utility>

#include "tokenprune/core.hpp"

namespace tokenprune {

/// Loss value with an optional gradient w.r.t. the n x d token matrix.
struct LossValue {
  double value = 0.0;
  std::optional<Matrix> gradient;
};

inline constexpr double kSimLossEpsilon = 0.01;

/// Nuclear norm divided by min(n, d). The gradient V U^T / min(n, d) is
/// returned only when the singular values are distinct and above `svd_tol`.
LossValue nuclear_loss(const TokenMatrix& doc, double svd_tol = 1e-12);

/// Negated, norm-weighted sum of positive pairwise inner products:
///   -1/(n(n-1)) sum_d (1 - |d|) sum_{d' != d} [d . d']+ / (|d| + eps).
/// Throws kTooFewTokens when n < 2. ReLU and norm kinks use subgradient 0.
LossValue sim_loss(const TokenMatrix& doc, double epsilon = kSimLossEpsilon);

/// Mean L1 norm of the token vectors; gradient sign(D) / n.
LossValue l1_loss(const TokenMatrix& doc);

/// KL(student || teacher) over the (positive, hard negative) pair plus the
/// negative log-likelihood of the positive (index 0) among `student_all`.
double ir_loss(std::pair<double, double> student_hard, std::pair<double, double> teacher_hard,
               std::span<const double> student_all);

enum class LossKind { kNuclear, kSim, kL1 };

LossValue evaluate_loss(LossKind kind, const TokenMatrix& doc);

/// Max over entries of |numeric - analytic| / max(|numeric|, |analytic|, 1e-6)
/// using central differences with the given step. Throws kGradientAbsent when
/// the loss has no analytic gradient at `doc`.
double finite_diff_check(LossKind kind, const TokenMatrix& doc, double step);

}  // namespace tokenprune
