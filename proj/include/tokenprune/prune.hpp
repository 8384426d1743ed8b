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

#include <utility>

#include "tokenprune/core.hpp"
#include "tokenprune/corpus.hpp"

namespace tokenprune {

/// Dominance pruning on the rank-k reduction selected by cfg.theta_lp.
/// Indices refer to the original tokens; at theta_lp = 1 this is exact.
DominancePartition lp_prune(const TokenMatrix& doc, const PruneConfig& cfg);

/// Prunes every token whose L2 norm is strictly below theta_n.
DominancePartition norm_prune(const TokenMatrix& doc, double theta_n);

/// Partition according to cfg.strategy.
DominancePartition prune_document(const TokenMatrix& doc, const PruneConfig& cfg);

/// Copy of `doc` holding only the kept rows, in their original order.
TokenMatrix apply_partition(const TokenMatrix& doc, const DominancePartition& partition);

/// Prunes each document (in parallel over cfg.workers) and reports kept
/// counts in document order. The first failing document aborts the run.
std::pair<CorpusIndex, PruneReport> prune_corpus(const CorpusIndex& index, const PruneConfig& cfg);

}  // namespace tokenprune
