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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "tokenprune/core.hpp"

namespace tokenprune {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoError;
}

TEST(ValidateTokenMatrix, AcceptsUnitRows) {
  TokenMatrix m("a", Matrix::from_rows({{1, 0}, {0, 1}}));
  EXPECT_EQ(validate_token_matrix(m), m);
}

TEST(ValidateTokenMatrix, RejectsNormAboveOne) {
  EXPECT_EQ(code_of([] { validate_token_matrix(TokenMatrix("a", Matrix::from_rows({{2, 0}}))); }),
            ErrorCode::kNormExceedsUnit);
}

TEST(ValidateTokenMatrix, AcceptsEmptyDocument) {
  TokenMatrix m("empty", Matrix(0, 4));
  EXPECT_EQ(validate_token_matrix(m).size(), 0u);
  EXPECT_EQ(validate_token_matrix(m).dim(), 4u);
}

TEST(ValidateTokenMatrix, NormSlack) {
  const double s = 1.0 + 0.5e-6;
  EXPECT_NO_THROW(validate_token_matrix(TokenMatrix("a", Matrix::from_rows({{s, 0}}))));
  const double t = 1.0 + 2e-6;
  EXPECT_EQ(code_of([&] { validate_token_matrix(TokenMatrix("a", Matrix::from_rows({{t, 0}}))); }),
            ErrorCode::kNormExceedsUnit);
}

TEST(ValidateTokenMatrix, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { validate_token_matrix(TokenMatrix("a", Matrix::from_rows({{nan, 0}}))); }),
            ErrorCode::kNonFiniteEntry);
}

TEST(ValidateTokenMatrix, ShapeMismatch) {
  EXPECT_EQ(code_of([] { Matrix(2, 2, std::vector<double>{1, 2, 3}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { Matrix::from_rows({{1, 0}, {1}}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { TokenMatrix("a", Matrix(3, 0)); }), ErrorCode::kShapeMismatch);
}

TEST(ValidateTokenMatrix, Idempotent) {
  TokenMatrix m("a", Matrix::from_rows({{0.6, 0.8}, {0.1, 0.2}}));
  EXPECT_EQ(validate_token_matrix(validate_token_matrix(m)), validate_token_matrix(m));
}

TEST(Partition, MakeAndCheck) {
  auto p = make_partition("d", {Evidence::kSelfMatch, Evidence::kLpFeasible, Evidence::kZeroVector,
                                Evidence::kLpInfeasible, Evidence::kDuplicate});
  EXPECT_EQ(p.kept, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(p.pruned, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_NO_THROW(check_partition(p));
}

TEST(Partition, CheckRejectsOverlap) {
  auto p = make_partition("d", {Evidence::kSelfMatch, Evidence::kLpFeasible});
  p.kept.push_back(1);
  EXPECT_EQ(code_of([&] { check_partition(p); }), ErrorCode::kInvariantViolation);
}

TEST(PruneConfig, Ranges) {
  PruneConfig cfg;
  EXPECT_NO_THROW(validate_config(cfg));
  cfg.theta_lp = 0.0;
  EXPECT_EQ(code_of([&] { validate_config(cfg); }), ErrorCode::kInvalidConfig);
  cfg.theta_lp = 0.5;
  cfg.theta_n = 1.5;
  EXPECT_EQ(code_of([&] { validate_config(cfg); }), ErrorCode::kInvalidConfig);
}

TEST(PruneReport, RemainingRatio) {
  std::vector<DocPruneStats> docs{{"a", 4, 2}, {"b", 4, 2}};
  EXPECT_DOUBLE_EQ(*remaining_ratio(docs), 0.5);
  EXPECT_FALSE(remaining_ratio(std::vector<DocPruneStats>{}).has_value());
}

}  // namespace
}  // namespace tokenprune
