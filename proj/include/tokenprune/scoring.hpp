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

#include <span>
#include <vector>

#include "tokenprune/core.hpp"

namespace tokenprune {

/// Sum over query rows of the max inner product with any document row.
/// Throws kDimensionMismatch, or kEmptyDocument when the document has no rows.
double colbert_score(const QueryMatrix& q, const TokenMatrix& doc);

/// Sum over query rows of max over document rows of [q . d]+.
/// An empty document scores 0.
double colbert_p_score(const QueryMatrix& q, const TokenMatrix& doc);

/// max_i [q . rows_i]+ for a single query vector; 0 when `rows` is empty.
double max_relu_inner_product(std::span<const double> q, const Matrix& rows);

/// Forward projection of one hidden state: stacks w1*hidden and w2*hidden,
/// normalizes the stack to unit norm and keeps the first w1.rows() entries.
/// Throws kShapeMismatch on inconsistent shapes, kZeroVector when the stacked
/// output has norm below `zero_tol`.
std::vector<double> project(std::span<const double> hidden, const Matrix& w1, const Matrix& w2,
                            double zero_tol = 1e-12);

}  // namespace tokenprune
