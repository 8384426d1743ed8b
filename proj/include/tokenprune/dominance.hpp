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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tokenprune/core.hpp"
#include "tokenprune/lp.hpp"

namespace tokenprune {

/// Rows closer than this componentwise are treated as one vector; rows with
/// a norm at or below it are treated as zero.
inline constexpr double kDuplicateTol = 1e-12;

/// Indices i with d_i . d_i >= d_i . d_j for every j != i. Each of them wins
/// (or ties) at q = d_i, so a nonzero one can never be dominated.
std::vector<std::size_t> self_match_prefilter(const TokenMatrix& doc);

enum class LocalDominance { kDominated, kNotDominated };

/// The dominance LP for target row `target` against `others`:
/// A = [d - d_j]_j (columns), b = -d. Feasible exactly when d is dominated.
FeasibilityResult dominance_lp(const Matrix& rows, std::size_t target,
                               std::span<const std::size_t> others, double tol);

/// Decides whether doc row `i` is dominated by the other rows of `active`.
/// `active` must contain `i`.
LocalDominance local_dominance_test(std::size_t i, const TokenMatrix& doc,
                                    std::span<const std::size_t> active, const PruneConfig& cfg);

enum class RemovalMode {
  kProgressive,  // drop each dominated vector from later tests
  kFullSet,      // test every candidate against the whole set
};

/// Dominance partition of the rows of `rows`, which may have zero columns.
/// Duplicates collapse to the lowest index, zero rows are pruned, self-matching
/// rows are kept, and the rest are decided by LP in ascending norm order.
DominancePartition partition_rows(const Matrix& rows, std::string doc_id, const PruneConfig& cfg,
                                  RemovalMode mode = RemovalMode::kProgressive);

DominancePartition global_partition(const TokenMatrix& doc, const PruneConfig& cfg);

/// Exact partition for d = 2 by sweeping query angles. Throws kDimensionNot2.
DominancePartition oracle_2d(const TokenMatrix& doc);

/// Draws `samples` uniform unit queries and returns the first one for which the
/// pruned rows beat the kept rows under max-of-ReLU by more than 1e-7.
std::optional<std::vector<double>> falsify_by_sampling(const TokenMatrix& doc,
                                                       const DominancePartition& partition,
                                                       std::size_t samples, std::uint64_t seed);

}  // namespace tokenprune
