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

#include "tokenprune/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tokenprune {

namespace {

void check_dims(const QueryMatrix& q, const TokenMatrix& doc) {
  if (q.dim() != doc.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query '" + q.query_id() + "' has dimension " + std::to_string(q.dim()) +
                    ", document '" + doc.doc_id() + "' has " + std::to_string(doc.dim()));
  }
}

}  // namespace

double colbert_score(const QueryMatrix& q, const TokenMatrix& doc) {
  check_dims(q, doc);
  if (doc.size() == 0) {
    throw Error(ErrorCode::kEmptyDocument, "document '" + doc.doc_id() + "' has no tokens");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < doc.size(); ++j) best = std::max(best, dot(q.row(i), doc.row(j)));
    total += best;
  }
  return total;
}

double max_relu_inner_product(std::span<const double> q, const Matrix& rows) {
  double best = 0.0;
  for (std::size_t j = 0; j < rows.rows(); ++j) best = std::max(best, dot(q, rows.row(j)));
  return best;
}

double colbert_p_score(const QueryMatrix& q, const TokenMatrix& doc) {
  check_dims(q, doc);
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) total += max_relu_inner_product(q.row(i), doc.vectors());
  return total;
}

std::vector<double> project(std::span<const double> hidden, const Matrix& w1, const Matrix& w2,
                            double zero_tol) {
  if (w1.cols() != hidden.size() || (w2.rows() > 0 && w2.cols() != hidden.size())) {
    throw Error(ErrorCode::kShapeMismatch, "projection weights do not match hidden size " +
                                               std::to_string(hidden.size()));
  }
  std::vector<double> stacked;
  stacked.reserve(w1.rows() + w2.rows());
  for (std::size_t r = 0; r < w1.rows(); ++r) stacked.push_back(dot(w1.row(r), hidden));
  for (std::size_t r = 0; r < w2.rows(); ++r) stacked.push_back(dot(w2.row(r), hidden));

  const double n = norm2(stacked);
  if (!(n >= zero_tol)) {
    throw Error(ErrorCode::kZeroVector, "stacked projection has norm " + std::to_string(n));
  }
  stacked.resize(w1.rows());
  for (double& v : stacked) v /= n;
  return stacked;
}

}  // namespace tokenprune
