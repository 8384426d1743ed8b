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

#include "tokenprune/prune.hpp"

#include <chrono>

#include "tokenprune/dominance.hpp"
#include "tokenprune/parallel.hpp"
#include "tokenprune/reduce.hpp"

namespace tokenprune {

DominancePartition lp_prune(const TokenMatrix& doc, const PruneConfig& cfg) {
  validate_config(cfg);
  if (doc.size() == 0) return make_partition(doc.doc_id(), {});
  const Matrix reduced = reduced_document(doc, cfg.theta_lp, cfg.svd_tol);
  return partition_rows(reduced.transposed(), doc.doc_id(), cfg);
}

DominancePartition norm_prune(const TokenMatrix& doc, double theta_n) {
  if (!(theta_n >= 0.0 && theta_n <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "theta_n must lie in [0, 1]");
  }
  std::vector<Evidence> evidence(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    evidence[i] = norm2(doc.row(i)) < theta_n ? Evidence::kNormBelowThreshold
                                              : Evidence::kNormAtOrAboveThreshold;
  }
  return make_partition(doc.doc_id(), std::move(evidence));
}

DominancePartition prune_document(const TokenMatrix& doc, const PruneConfig& cfg) {
  return cfg.strategy == Strategy::kLp ? lp_prune(doc, cfg) : norm_prune(doc, cfg.theta_n);
}

TokenMatrix apply_partition(const TokenMatrix& doc, const DominancePartition& partition) {
  return TokenMatrix(doc.doc_id(), doc.vectors().select_rows(partition.kept));
}

std::pair<CorpusIndex, PruneReport> prune_corpus(const CorpusIndex& index, const PruneConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto& docs = index.docs();
  std::vector<TokenMatrix> kept(docs.size());
  parallel_for(docs.size(), cfg.workers, [&](std::size_t i) {
    try {
      kept[i] = apply_partition(docs[i], prune_document(docs[i], cfg));
    } catch (const Error& e) {
      throw Error(e.code(), "while pruning document '" + docs[i].doc_id() + "': " + e.message());
    }
  });

  CorpusIndex out;
  if (index.dim()) out.set_dim(*index.dim());
  PruneReport report;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    report.per_doc.push_back({docs[i].doc_id(), docs[i].size(), kept[i].size()});
    out.add(std::move(kept[i]));
  }
  report.remaining_ratio = remaining_ratio(report.per_doc);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(out), std::move(report)};
}

}  // namespace tokenprune
