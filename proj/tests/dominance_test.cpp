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

#include <algorithm>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "tokenprune/dominance.hpp"
#include "tokenprune/scoring.hpp"

namespace tokenprune {
namespace {

using Idx = std::vector<std::size_t>;

TokenMatrix doc(std::initializer_list<std::initializer_list<double>> rows) {
  return TokenMatrix("d", Matrix::from_rows(rows));
}

TEST(SelfMatch, Examples) {
  EXPECT_EQ(self_match_prefilter(doc({{1, 0}, {0.9, 0}})), Idx({0}));
  EXPECT_EQ(self_match_prefilter(doc({{1, 0}, {0, 1}})), Idx({0, 1}));
  EXPECT_EQ(self_match_prefilter(doc({{0, 0}})), Idx({0}));
}

TEST(LocalDominance, Examples) {
  const PruneConfig cfg;
  const Idx all{0, 1, 2};
  EXPECT_EQ(local_dominance_test(0, doc({{0.45, 0.45}, {1, 0}, {0, 1}}), all, cfg),
            LocalDominance::kDominated);
  EXPECT_EQ(local_dominance_test(0, doc({{0.5, 0.5}, {1, 0}, {0, 1}}), all, cfg),
            LocalDominance::kNotDominated);
  EXPECT_EQ(local_dominance_test(0, doc({{0, 0}, {0.3, -0.2}}), Idx{0, 1}, cfg),
            LocalDominance::kDominated);
}

TEST(LocalDominance, WitnessAndCertificate) {
  const auto d = doc({{0.45, 0.45}, {1, 0}, {0, 1}});
  const auto r = dominance_lp(d.vectors(), 0, Idx{1, 2}, 1e-9);
  ASSERT_TRUE(r.feasible());
  EXPECT_NEAR(r.witness[0], 4.5, 1e-6);
  EXPECT_NEAR(r.witness[1], 4.5, 1e-6);

  const auto e = doc({{0.5, 0.5}, {1, 0}, {0, 1}});
  const auto s = dominance_lp(e.vectors(), 0, Idx{1, 2}, 1e-9);
  ASSERT_FALSE(s.feasible());
  EXPECT_NEAR(s.certificate[0], 1.0, 1e-12);
  EXPECT_NEAR(s.certificate[1], 1.0, 1e-12);
}

TEST(LocalDominance, IndexMustBeActive) {
  try {
    local_dominance_test(0, doc({{1, 0}, {0, 1}}), Idx{1}, PruneConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvariantViolation);
  }
}

TEST(GlobalPartition, Examples) {
  const PruneConfig cfg;
  auto p = global_partition(doc({{1, 0}, {0.9, 0}, {0, 1}}), cfg);
  EXPECT_EQ(p.kept, Idx({0, 2}));
  EXPECT_EQ(p.pruned, Idx({1}));
  EXPECT_EQ(p.evidence[1], Evidence::kLpFeasible);

  p = global_partition(doc({{1, 0}}), cfg);
  EXPECT_EQ(p.kept, Idx({0}));
  EXPECT_TRUE(p.pruned.empty());
}

TEST(GlobalPartition, WorkedTwoDimFixture) {
  // d2 has the lowest norm yet owns the arc around (-1, 2); d3 sits inside the
  // hull of d1, d4 and the origin.
  const auto d = doc({{1, 0}, {-0.3, 0.6}, {0.4, 0.1}, {0.5, 0.5}});
  const auto p = global_partition(d, PruneConfig{});
  EXPECT_EQ(p.kept, Idx({0, 1, 3}));
  EXPECT_EQ(p.pruned, Idx({2}));
  EXPECT_EQ(oracle_2d(d).kept, p.kept);

  // Same picture with d2 shrunk below every other norm.
  const auto e = doc({{1, 0}, {-0.15, 0.3}, {0.4, 0.1}, {0.5, 0.5}});
  EXPECT_EQ(global_partition(e, PruneConfig{}).pruned, Idx({2}));
}

TEST(GlobalPartition, DuplicatesAndZeros) {
  const auto p = global_partition(doc({{0.5, 0.5}, {0, 0}, {0.5, 0.5}, {0.1, 0.1}}), PruneConfig{});
  EXPECT_EQ(p.evidence[0], Evidence::kSelfMatch);
  EXPECT_EQ(p.evidence[1], Evidence::kZeroVector);
  EXPECT_EQ(p.evidence[2], Evidence::kDuplicate);
  EXPECT_EQ(p.kept, Idx({0}));
}

TEST(GlobalPartition, EmptyDocument) {
  const auto p = global_partition(TokenMatrix("e", Matrix(0, 3)), PruneConfig{});
  EXPECT_TRUE(p.kept.empty());
  EXPECT_TRUE(p.pruned.empty());
}

TEST(Oracle2d, Examples) {
  EXPECT_EQ(oracle_2d(doc({{1, 0}, {0, 1}})).kept, Idx({0, 1}));
  EXPECT_EQ(oracle_2d(doc({{1, 0}, {0.9, 0}})).kept, Idx({0}));
  EXPECT_EQ(oracle_2d(doc({{0.45, 0.45}, {1, 0}, {0, 1}})).kept, Idx({1, 2}));
}

TEST(Oracle2d, RejectsOtherDimensions) {
  try {
    oracle_2d(TokenMatrix("x", Matrix::from_rows({{1, 0, 0}})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionNot2);
  }
}

TEST(Falsify, Examples) {
  const auto a = doc({{1, 0}, {0.9, 0}});
  EXPECT_FALSE(falsify_by_sampling(a, global_partition(a, PruneConfig{}), 10000, 1));

  const auto b = doc({{1, 0}, {0, 1}});
  const auto bad = make_partition("d", {Evidence::kLpFeasible, Evidence::kSelfMatch});
  const auto q = falsify_by_sampling(b, bad, 10000, 1);
  ASSERT_TRUE(q.has_value());
  EXPECT_GT((*q)[0], 0.0);

  const auto none = make_partition("d", {Evidence::kSelfMatch, Evidence::kSelfMatch});
  EXPECT_FALSE(falsify_by_sampling(b, none, 10000, 1));
}

TEST(DominanceProperties, SelfMatchIsAlwaysKept) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = testing::random_document(rng, 1 + trial % 20, 2 + trial % 7);
    const auto p = global_partition(d, PruneConfig{});
    for (auto i : self_match_prefilter(d)) {
      EXPECT_TRUE(std::binary_search(p.kept.begin(), p.kept.end(), i)) << "trial " << trial;
    }
  }
}

TEST(DominanceProperties, KeptRowsPreserveScores) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_document(rng, 2 + trial % 25, 2 + trial % 6);
    const auto p = global_partition(d, PruneConfig{});
    EXPECT_FALSE(falsify_by_sampling(d, p, 2000, trial)) << "trial " << trial;
  }
}

TEST(DominanceProperties, OrderRobustness) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 15, dim = 2 + trial % 5;
    const auto d = testing::random_document(rng, n, dim);
    Idx perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const TokenMatrix shuffled("d", d.vectors().select_rows(perm));

    const auto p = global_partition(d, PruneConfig{});
    const auto s = global_partition(shuffled, PruneConfig{});
    EXPECT_EQ(p.pruned.size(), s.pruned.size()) << "trial " << trial;

    const Matrix kp = d.vectors().select_rows(p.kept);
    const Matrix ks = shuffled.vectors().select_rows(s.kept);
    for (int k = 0; k < 200; ++k) {
      const auto q = testing::random_direction(rng, dim);
      EXPECT_NEAR(max_relu_inner_product(q, kp), max_relu_inner_product(q, ks), 1e-12);
    }
  }
}

TEST(DominanceProperties, ProgressiveMatchesFullSet) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = testing::random_document(rng, 1 + trial % 30, 2 + trial % 8);
    const PruneConfig cfg;
    const auto prog = partition_rows(d.vectors(), "d", cfg, RemovalMode::kProgressive);
    const auto full = partition_rows(d.vectors(), "d", cfg, RemovalMode::kFullSet);
    EXPECT_EQ(prog.kept, full.kept) << "trial " << trial;
    EXPECT_EQ(prog.pruned, full.pruned) << "trial " << trial;
  }
}

TEST(DominanceProperties, OracleAgreementIn2d) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = testing::random_document(rng, 1 + trial % 12, 2);
    EXPECT_EQ(global_partition(d, PruneConfig{}).kept, oracle_2d(d).kept) << "trial " << trial;
  }
}

}  // namespace
}  // namespace tokenprune
