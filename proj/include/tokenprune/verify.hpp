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
#include <string>
#include <vector>

#include "tokenprune/core.hpp"
#include "tokenprune/corpus.hpp"

namespace tokenprune {

/// Absolute score change above which pruning counts as lossy.
inline constexpr double kLosslessTol = 1e-6;

struct Counterexample {
  std::string doc_id;
  std::vector<double> query;
};

struct VerifyReport {
  std::size_t docs_checked = 0;
  std::size_t queries_per_doc = 0;
  double max_abs_score_delta = 0.0;
  std::vector<Counterexample> counterexamples;  // at most one per document
  std::optional<double> kendall_tau_vs_unpruned;
};

/// Compares max-of-ReLU scores of original and pruned documents on `samples`
/// random unit queries per document. Query streams are seeded per document,
/// so the report does not depend on `workers`. Throws kIndexMismatch when doc
/// ids differ or a pruned token is absent from its original document.
VerifyReport verify_lossless(const CorpusIndex& original, const CorpusIndex& pruned,
                             std::size_t samples, std::uint64_t seed, unsigned workers = 1);

/// Tie-aware Kendall tau-b between two score lists. When either list is all
/// ties, returns 1 if both are and 0 otherwise.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Kendall tau-b between corpus rankings by ColBERT_P score under the two
/// indexes. Throws kTooFewDocuments below 2 documents.
double rank_correlation(const QueryMatrix& q, const CorpusIndex& original,
                        const CorpusIndex& pruned);

}  // namespace tokenprune
