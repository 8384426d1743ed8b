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
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tokenprune/error.hpp"

namespace tokenprune {

/// Row-major dense matrix of doubles. Rows or columns may be zero.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Throws kShapeMismatch when data.size() != rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Builds from nested rows; all rows must share one length.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows,
                          std::size_t cols_if_empty = 0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transposed() const;
  /// Copy of the listed rows, in the listed order.
  Matrix select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// A document: n token vectors of dimension d (rows of `vectors`).
class TokenMatrix {
 public:
  TokenMatrix() = default;
  /// Throws kShapeMismatch when vectors.cols() == 0.
  TokenMatrix(std::string doc_id, Matrix vectors);

  const std::string& doc_id() const noexcept { return doc_id_; }
  const Matrix& vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.rows(); }
  std::size_t dim() const noexcept { return vectors_.cols(); }
  std::span<const double> row(std::size_t i) const { return vectors_.row(i); }

  friend bool operator==(const TokenMatrix&, const TokenMatrix&) = default;

 private:
  std::string doc_id_;
  Matrix vectors_;
};

class QueryMatrix {
 public:
  QueryMatrix() = default;
  /// Throws kShapeMismatch when vectors has no rows or no columns.
  QueryMatrix(std::string query_id, Matrix vectors);

  const std::string& query_id() const noexcept { return query_id_; }
  const Matrix& vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.rows(); }
  std::size_t dim() const noexcept { return vectors_.cols(); }
  std::span<const double> row(std::size_t i) const { return vectors_.row(i); }

 private:
  std::string query_id_;
  Matrix vectors_;
};

/// Slack accepted above unit norm for stored vectors.
inline constexpr double kNormSlack = 1e-6;

/// Returns the matrix unchanged or throws kNonFiniteEntry / kNormExceedsUnit.
TokenMatrix validate_token_matrix(TokenMatrix m);
QueryMatrix validate_query_matrix(QueryMatrix q);

/// Why a token ended up on its side of a partition.
enum class Evidence : std::uint8_t {
  kSelfMatch,
  kLpInfeasible,
  kLpFeasible,
  kZeroVector,
  kDuplicate,
  kNormBelowThreshold,
  kNormAtOrAboveThreshold,
};

std::string_view evidence_name(Evidence e);
bool is_pruning_evidence(Evidence e);

struct DominancePartition {
  std::string doc_id;
  std::vector<std::size_t> kept;    // sorted
  std::vector<std::size_t> pruned;  // sorted
  std::vector<Evidence> evidence;   // one per token

  std::size_t size() const noexcept { return evidence.size(); }
};

/// Builds kept/pruned from per-token evidence.
DominancePartition make_partition(std::string doc_id, std::vector<Evidence> evidence);

/// Throws kInvariantViolation unless kept/pruned are sorted, disjoint, cover
/// 0..n-1 and agree with the evidence tags.
void check_partition(const DominancePartition& p);

enum class Strategy { kLp, kNorm };

struct PruneConfig {
  Strategy strategy = Strategy::kLp;
  double theta_lp = 1.0;     // in (0, 1]
  double theta_n = 0.0;      // in [0, 1]
  double lp_feas_tol = 1e-9;
  double svd_tol = 1e-12;
  std::uint64_t rng_seed = 0;
  unsigned workers = 1;      // 0 = hardware concurrency
};

/// Throws kInvalidConfig when a field is out of range.
void validate_config(const PruneConfig& cfg);

struct DocPruneStats {
  std::string doc_id;
  std::size_t n_before = 0;
  std::size_t n_after = 0;
};

struct PruneReport {
  std::vector<DocPruneStats> per_doc;
  std::optional<double> remaining_ratio;
  std::optional<double> score_delta_max;
  double wall_time_seconds = 0.0;
};

/// Σ n_after / Σ n_before, absent when there are no tokens.
std::optional<double> remaining_ratio(std::span<const DocPruneStats> per_doc);

}  // namespace tokenprune
