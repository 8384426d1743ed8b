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

#include "tokenprune/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "tokenprune/scoring.hpp"

namespace tokenprune {

namespace {

bool same_vector(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kDuplicateTol) return false;
  return true;
}

// Tags duplicates (all but the lowest index of each group) and zero rows.
// Returns the surviving indices in ascending order.
std::vector<std::size_t> drop_duplicates_and_zeros(const Matrix& rows,
                                                   std::vector<std::optional<Evidence>>& tags) {
  const std::size_t n = rows.rows();
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < n; ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) {
      dup = tags[j] != Evidence::kDuplicate && same_vector(rows.row(i), rows.row(j));
    }
    if (dup) {
      tags[i] = Evidence::kDuplicate;
    } else if (norm2(rows.row(i)) <= kDuplicateTol) {
      tags[i] = Evidence::kZeroVector;
    } else {
      survivors.push_back(i);
    }
  }
  return survivors;
}

bool self_matches(const Matrix& rows, std::size_t i, std::span<const std::size_t> among) {
  const double self = dot(rows.row(i), rows.row(i));
  for (auto j : among) {
    if (j != i && dot(rows.row(i), rows.row(j)) > self) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> self_match_prefilter(const TokenMatrix& doc) {
  std::vector<std::size_t> all(doc.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < doc.size(); ++i)
    if (self_matches(doc.vectors(), i, all)) out.push_back(i);
  return out;
}

FeasibilityResult dominance_lp(const Matrix& rows, std::size_t target,
                               std::span<const std::size_t> others, double tol) {
  const std::size_t k = rows.cols();
  const auto d = rows.row(target);
  Matrix a(k, others.size());
  for (std::size_t c = 0; c < others.size(); ++c) {
    const auto dj = rows.row(others[c]);
    for (std::size_t r = 0; r < k; ++r) a(r, c) = d[r] - dj[r];
  }
  std::vector<double> b(k);
  for (std::size_t r = 0; r < k; ++r) b[r] = -d[r];
  return lp_feasible(a, b, tol);
}

LocalDominance local_dominance_test(std::size_t i, const TokenMatrix& doc,
                                    std::span<const std::size_t> active, const PruneConfig& cfg) {
  if (std::find(active.begin(), active.end(), i) == active.end()) {
    throw Error(ErrorCode::kInvariantViolation, "tested index is not in the active set");
  }
  std::vector<std::size_t> others;
  others.reserve(active.size());
  for (auto j : active)
    if (j != i) others.push_back(j);
  return dominance_lp(doc.vectors(), i, others, cfg.lp_feas_tol).feasible()
             ? LocalDominance::kDominated
             : LocalDominance::kNotDominated;
}

DominancePartition partition_rows(const Matrix& rows, std::string doc_id, const PruneConfig& cfg,
                                  RemovalMode mode) {
  const std::size_t n = rows.rows();
  std::vector<std::optional<Evidence>> tags(n);
  std::vector<std::size_t> active = drop_duplicates_and_zeros(rows, tags);
  const std::vector<std::size_t> full = active;

  std::vector<std::size_t> candidates;
  for (auto i : full) {
    if (self_matches(rows, i, full)) {
      tags[i] = Evidence::kSelfMatch;
    } else {
      candidates.push_back(i);
    }
  }

  std::vector<double> norms(n);
  for (auto i : candidates) norms[i] = norm2(rows.row(i));
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] < norms[y]; });

  std::vector<std::size_t> others;
  for (auto i : candidates) {
    const auto& pool = mode == RemovalMode::kProgressive ? active : full;
    others.clear();
    for (auto j : pool)
      if (j != i) others.push_back(j);
    if (dominance_lp(rows, i, others, cfg.lp_feas_tol).feasible()) {
      tags[i] = Evidence::kLpFeasible;
      if (mode == RemovalMode::kProgressive) std::erase(active, i);
    } else {
      tags[i] = Evidence::kLpInfeasible;
    }
  }

  std::vector<Evidence> evidence(n);
  for (std::size_t i = 0; i < n; ++i) evidence[i] = *tags[i];
  return make_partition(std::move(doc_id), std::move(evidence));
}

DominancePartition global_partition(const TokenMatrix& doc, const PruneConfig& cfg) {
  return partition_rows(doc.vectors(), doc.doc_id(), cfg, RemovalMode::kProgressive);
}

DominancePartition oracle_2d(const TokenMatrix& doc) {
  if (doc.dim() != 2) {
    throw Error(ErrorCode::kDimensionNot2,
                "document '" + doc.doc_id() + "' has dimension " + std::to_string(doc.dim()));
  }
  const Matrix& rows = doc.vectors();
  const std::size_t n = rows.rows();
  std::vector<std::optional<Evidence>> tags(n);
  const auto reps = drop_duplicates_and_zeros(rows, tags);

  // Angles where the ordering of inner products can change: q orthogonal to
  // d_i (sign change) or to d_i - d_j (crossing).
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<double> breaks;
  auto add_normal_of = [&](double x, double y) {
    const double base = std::atan2(y, x);
    for (double off : {std::numbers::pi / 2, -std::numbers::pi / 2}) {
      double a = std::fmod(base + off, kTwoPi);
      if (a < 0) a += kTwoPi;
      breaks.push_back(a);
    }
  };
  for (std::size_t a = 0; a < reps.size(); ++a) {
    const auto di = rows.row(reps[a]);
    add_normal_of(di[0], di[1]);
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      const auto dj = rows.row(reps[b]);
      add_normal_of(di[0] - dj[0], di[1] - dj[1]);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> probes;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = i + 1 < breaks.size() ? breaks[i + 1] : breaks.front() + kTwoPi;
    probes.push_back(0.5 * (lo + hi));
  }

  std::vector<bool> wins(n, false);
  for (double phi : probes) {
    const double q[2] = {std::cos(phi), std::sin(phi)};
    std::size_t best = n;
    double best_val = 0.0, second = -INFINITY;
    for (auto i : reps) {
      const double v = dot(q, rows.row(i));
      if (best == n || v > best_val) {
        second = best == n ? -INFINITY : best_val;
        best = i;
        best_val = v;
      } else {
        second = std::max(second, v);
      }
    }
    if (best != n && best_val > 0.0 && best_val > second) wins[best] = true;
  }

  // The oracle reuses the LP tags to mean "not dominated" / "dominated".
  std::vector<Evidence> evidence(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (tags[i]) {
      evidence[i] = *tags[i];
    } else {
      evidence[i] = wins[i] ? Evidence::kLpInfeasible : Evidence::kLpFeasible;
    }
  }
  return make_partition(doc.doc_id(), std::move(evidence));
}

std::optional<std::vector<double>> falsify_by_sampling(const TokenMatrix& doc,
                                                       const DominancePartition& partition,
                                                       std::size_t samples, std::uint64_t seed) {
  if (partition.pruned.empty()) return std::nullopt;
  const Matrix kept = doc.vectors().select_rows(partition.kept);
  const Matrix pruned = doc.vectors().select_rows(partition.pruned);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> q(doc.dim());
  for (std::size_t s = 0; s < samples; ++s) {
    double len = 0.0;
    while (len == 0.0) {
      for (double& v : q) v = normal(rng);
      len = norm2(q);
    }
    for (double& v : q) v /= len;
    if (max_relu_inner_product(q, pruned) > max_relu_inner_product(q, kept) + 1e-7) return q;
  }
  return std::nullopt;
}

}  // namespace tokenprune
