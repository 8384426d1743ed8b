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

#include "tokenprune/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tokenprune/parallel.hpp"
#include "tokenprune/scoring.hpp"

namespace tokenprune {

namespace {

constexpr std::size_t kRankingQueryTokens = 8;

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

void random_unit(std::mt19937_64& rng, std::span<double> out) {
  std::normal_distribution<double> normal;
  double len = 0.0;
  while (len == 0.0) {
    for (double& v : out) v = normal(rng);
    len = norm2(out);
  }
  for (double& v : out) v /= len;
}

bool contains_row(const Matrix& m, std::span<const double> r) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    bool same = true;
    for (std::size_t c = 0; c < r.size() && same; ++c) same = std::abs(row[c] - r[c]) <= 1e-12;
    if (same) return true;
  }
  return false;
}

void check_pairing(const CorpusIndex& original, const CorpusIndex& pruned) {
  if (original.size() != pruned.size()) {
    throw Error(ErrorCode::kIndexMismatch, "indexes hold " + std::to_string(original.size()) +
                                               " and " + std::to_string(pruned.size()) +
                                               " documents");
  }
  for (std::size_t i = 0; i < original.size(); ++i) {
    const auto& a = original.docs()[i];
    const auto& b = pruned.docs()[i];
    if (a.doc_id() != b.doc_id()) {
      throw Error(ErrorCode::kIndexMismatch, "document " + std::to_string(i) + " is '" +
                                                 a.doc_id() + "' vs '" + b.doc_id() + "'");
    }
    if (a.dim() != b.dim()) {
      throw Error(ErrorCode::kIndexMismatch, "dimension differs for '" + a.doc_id() + "'");
    }
    for (std::size_t r = 0; r < b.size(); ++r) {
      if (!contains_row(a.vectors(), b.row(r))) {
        throw Error(ErrorCode::kIndexMismatch, "pruned token " + std::to_string(r) + " of '" +
                                                   a.doc_id() + "' is not in the original");
      }
    }
  }
}

}  // namespace

VerifyReport verify_lossless(const CorpusIndex& original, const CorpusIndex& pruned,
                             std::size_t samples, std::uint64_t seed, unsigned workers) {
  check_pairing(original, pruned);
  const auto& docs = original.docs();

  struct DocResult {
    double delta = 0.0;
    std::optional<std::vector<double>> counterexample;
  };
  std::vector<DocResult> results(docs.size());
  parallel_for(docs.size(), workers, [&](std::size_t i) {
    const auto& full = docs[i].vectors();
    const auto& kept = pruned.docs()[i].vectors();
    auto rng = stream_for(seed, i);
    std::vector<double> q(full.cols());
    auto& res = results[i];
    for (std::size_t s = 0; s < samples; ++s) {
      random_unit(rng, q);
      const double delta =
          std::abs(max_relu_inner_product(q, full) - max_relu_inner_product(q, kept));
      res.delta = std::max(res.delta, delta);
      if (delta > kLosslessTol && !res.counterexample) res.counterexample = q;
    }
  });

  VerifyReport report;
  report.docs_checked = docs.size();
  report.queries_per_doc = samples;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    report.max_abs_score_delta = std::max(report.max_abs_score_delta, results[i].delta);
    if (results[i].counterexample) {
      report.counterexamples.push_back({docs[i].doc_id(), *results[i].counterexample});
    }
  }

  if (docs.size() >= 2 && original.dim()) {
    auto rng = stream_for(seed, docs.size());
    Matrix qm(kRankingQueryTokens, *original.dim());
    for (std::size_t r = 0; r < qm.rows(); ++r) random_unit(rng, qm.row(r));
    report.kendall_tau_vs_unpruned =
        rank_correlation(QueryMatrix("verify-ranking", std::move(qm)), original, pruned);
  }
  return report;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kShapeMismatch, "score lists differ in length");
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const int sx = (x[i] > x[j]) - (x[i] < x[j]);
      const int sy = (y[i] > y[j]) - (y[i] < y[j]);
      if (sx == 0) ++ties_x;
      if (sy == 0) ++ties_y;
      if (sx != 0 && sy != 0) (sx == sy ? concordant : discordant)++;
    }
  const long long pairs = static_cast<long long>(x.size() * (x.size() - 1) / 2);
  // One sqrt of the product keeps a perfect ranking at exactly 1.
  const double denom = std::sqrt(static_cast<double>(pairs - ties_x) *
                                 static_cast<double>(pairs - ties_y));
  if (denom == 0.0) return (ties_x == pairs && ties_y == pairs) ? 1.0 : 0.0;
  return static_cast<double>(concordant - discordant) / denom;
}

double rank_correlation(const QueryMatrix& q, const CorpusIndex& original,
                        const CorpusIndex& pruned) {
  if (original.size() < 2) {
    throw Error(ErrorCode::kTooFewDocuments, "rank correlation needs at least 2 documents");
  }
  if (original.size() != pruned.size()) {
    throw Error(ErrorCode::kIndexMismatch, "indexes differ in document count");
  }
  std::vector<double> a, b;
  for (std::size_t i = 0; i < original.size(); ++i) {
    a.push_back(colbert_p_score(q, original.docs()[i]));
    b.push_back(colbert_p_score(q, pruned.docs()[i]));
  }
  return kendall_tau_b(a, b);
}

}  // namespace tokenprune
