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

#include "tokenprune/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace tokenprune {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kNormExceedsUnit: return "NormExceedsUnit";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kDimensionNot2: return "DimensionNot2";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kTooFewTokens: return "TooFewTokens";
    case ErrorCode::kGradientAbsent: return "GradientAbsent";
    case ErrorCode::kTooFewDocuments: return "TooFewDocuments";
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kShapeMismatch,
                "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                    std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows,
                         std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::kShapeMismatch,
                  "row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) +
                      ", expected " + std::to_string(cols));
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return Matrix(rows.size(), cols, std::move(data));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    auto src = row(indices[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

TokenMatrix::TokenMatrix(std::string doc_id, Matrix vectors)
    : doc_id_(std::move(doc_id)), vectors_(std::move(vectors)) {
  if (vectors_.cols() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "document '" + doc_id_ + "' has dimension 0");
  }
}

QueryMatrix::QueryMatrix(std::string query_id, Matrix vectors)
    : query_id_(std::move(query_id)), vectors_(std::move(vectors)) {
  if (vectors_.cols() == 0 || vectors_.rows() == 0) {
    throw Error(ErrorCode::kShapeMismatch,
                "query '" + query_id_ + "' must have at least one vector of dimension >= 1");
  }
}

namespace {

void check_rows(const Matrix& m, const std::string& what) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteEntry, what + " has a non-finite entry");
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double n = norm2(m.row(i));
    if (n > 1.0 + kNormSlack) {
      throw Error(ErrorCode::kNormExceedsUnit,
                  what + " row " + std::to_string(i) + " has norm " + std::to_string(n));
    }
  }
}

}  // namespace

TokenMatrix validate_token_matrix(TokenMatrix m) {
  check_rows(m.vectors(), "document '" + m.doc_id() + "'");
  return m;
}

QueryMatrix validate_query_matrix(QueryMatrix q) {
  check_rows(q.vectors(), "query '" + q.query_id() + "'");
  return q;
}

std::string_view evidence_name(Evidence e) {
  switch (e) {
    case Evidence::kSelfMatch: return "SelfMatch";
    case Evidence::kLpInfeasible: return "LpInfeasible";
    case Evidence::kLpFeasible: return "LpFeasible";
    case Evidence::kZeroVector: return "ZeroVector";
    case Evidence::kDuplicate: return "Duplicate";
    case Evidence::kNormBelowThreshold: return "NormBelowThreshold";
    case Evidence::kNormAtOrAboveThreshold: return "NormAtOrAboveThreshold";
  }
  return "Unknown";
}

bool is_pruning_evidence(Evidence e) {
  return e == Evidence::kLpFeasible || e == Evidence::kZeroVector ||
         e == Evidence::kDuplicate || e == Evidence::kNormBelowThreshold;
}

DominancePartition make_partition(std::string doc_id, std::vector<Evidence> evidence) {
  DominancePartition p;
  p.doc_id = std::move(doc_id);
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    (is_pruning_evidence(evidence[i]) ? p.pruned : p.kept).push_back(i);
  }
  p.evidence = std::move(evidence);
  return p;
}

void check_partition(const DominancePartition& p) {
  const std::size_t n = p.evidence.size();
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kInvariantViolation, "partition of '" + p.doc_id + "': " + why);
  };
  if (!std::is_sorted(p.kept.begin(), p.kept.end()) ||
      !std::is_sorted(p.pruned.begin(), p.pruned.end())) {
    fail("index lists not sorted");
  }
  if (p.kept.size() + p.pruned.size() != n) fail("kept and pruned do not cover all tokens");
  std::vector<int> seen(n, 0);
  for (auto i : p.kept) {
    if (i >= n || seen[i]++) fail("bad kept index " + std::to_string(i));
    if (is_pruning_evidence(p.evidence[i])) fail("kept index carries pruning evidence");
  }
  for (auto i : p.pruned) {
    if (i >= n || seen[i]++) fail("bad pruned index " + std::to_string(i));
    if (!is_pruning_evidence(p.evidence[i])) fail("pruned index carries keeping evidence");
  }
}

void validate_config(const PruneConfig& cfg) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); };
  if (!(cfg.theta_lp > 0.0 && cfg.theta_lp <= 1.0)) bad("theta_lp must lie in (0, 1]");
  if (!(cfg.theta_n >= 0.0 && cfg.theta_n <= 1.0)) bad("theta_n must lie in [0, 1]");
  if (!(cfg.lp_feas_tol > 0.0)) bad("lp_feas_tol must be positive");
  if (!(cfg.svd_tol > 0.0)) bad("svd_tol must be positive");
}

std::optional<double> remaining_ratio(std::span<const DocPruneStats> per_doc) {
  std::size_t before = 0, after = 0;
  for (const auto& d : per_doc) {
    before += d.n_before;
    after += d.n_after;
  }
  if (before == 0) return std::nullopt;
  return static_cast<double>(after) / static_cast<double>(before);
}

}  // namespace tokenprune
