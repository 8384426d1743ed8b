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

#include "tokenprune/corpus.hpp"

#include <algorithm>

namespace tokenprune {

void CorpusIndex::set_dim(std::size_t d) {
  if (dim_ && *dim_ != d) {
    throw Error(ErrorCode::kInvariantViolation, "index dimension already fixed to " +
                                                    std::to_string(*dim_));
  }
  dim_ = d;
}

void CorpusIndex::add(TokenMatrix doc) {
  doc = validate_token_matrix(std::move(doc));
  if (dim_ && *dim_ != doc.dim()) {
    throw Error(ErrorCode::kInvariantViolation,
                "document '" + doc.doc_id() + "' has dimension " + std::to_string(doc.dim()) +
                    ", index has " + std::to_string(*dim_));
  }
  auto pos = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), doc.doc_id());
  if (pos != sorted_ids_.end() && *pos == doc.doc_id()) {
    throw Error(ErrorCode::kInvariantViolation, "duplicate doc id '" + doc.doc_id() + "'");
  }
  sorted_ids_.insert(pos, doc.doc_id());
  dim_ = doc.dim();
  docs_.push_back(std::move(doc));
}

std::size_t CorpusIndex::total_tokens() const noexcept {
  std::size_t t = 0;
  for (const auto& d : docs_) t += d.size();
  return t;
}

}  // namespace tokenprune
