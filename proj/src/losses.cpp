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

#include "tokenprune/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tokenprune/reduce.hpp"

namespace tokenprune {

LossValue nuclear_loss(const TokenMatrix& doc, double svd_tol) {
  const auto f = svd(doc, svd_tol);
  const double m = static_cast<double>(std::min(doc.size(), doc.dim()));
  LossValue out;
  out.value = std::accumulate(f.sigma.begin(), f.sigma.end(), 0.0) / m;

  bool simple = true;
  for (std::size_t i = 0; i < f.sigma.size() && simple; ++i) {
    simple = f.sigma[i] > svd_tol && (i == 0 || f.sigma[i - 1] - f.sigma[i] > svd_tol);
  }
  if (!simple) return out;

  const std::size_t n = doc.size(), d = doc.dim(), r = f.sigma.size();
  Matrix grad(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < d; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < r; ++k) s += f.v(i, k) * f.u(c, k);
      grad(i, c) = s / m;
    }
  out.gradient = std::move(grad);
  return out;
}

LossValue sim_loss(const TokenMatrix& doc, double epsilon) {
  const std::size_t n = doc.size(), d = doc.dim();
  if (n < 2) {
    throw Error(ErrorCode::kTooFewTokens,
                "sim_loss needs at least 2 tokens, got " + std::to_string(n));
  }
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));

  std::vector<double> norm(n), weight(n), relu_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    norm[i] = norm2(doc.row(i));
    weight[i] = (1.0 - norm[i]) / (norm[i] + epsilon);
  }
  Matrix ip(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      ip(i, j) = dot(doc.row(i), doc.row(j));
      relu_sum[i] += std::max(0.0, ip(i, j));
    }

  LossValue out;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += weight[i] * relu_sum[i];
  out.value = -scale * total;

  // d/dd_i: weight'(|d_i|) relu_sum_i d_i/|d_i| + sum_{j: ip_ij > 0} (weight_i + weight_j) d_j
  Matrix grad(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto g = grad.row(i);
    if (norm[i] > 0.0) {
      const double dw = -(1.0 + epsilon) / ((norm[i] + epsilon) * (norm[i] + epsilon));
      const double f = dw * relu_sum[i] / norm[i];
      auto di = doc.row(i);
      for (std::size_t c = 0; c < d; ++c) g[c] += f * di[c];
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || ip(i, j) <= 0.0) continue;
      const double f = weight[i] + weight[j];
      auto dj = doc.row(j);
      for (std::size_t c = 0; c < d; ++c) g[c] += f * dj[c];
    }
    for (double& x : g) x *= -scale;
  }
  out.gradient = std::move(grad);
  return out;
}

LossValue l1_loss(const TokenMatrix& doc) {
  const std::size_t n = doc.size();
  if (n == 0) throw Error(ErrorCode::kEmptyDocument, "l1_loss of a document without tokens");
  const double inv_n = 1.0 / static_cast<double>(n);
  LossValue out;
  Matrix grad(n, doc.dim());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = doc.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      total += std::abs(row[c]);
      grad(i, c) = row[c] > 0.0 ? inv_n : (row[c] < 0.0 ? -inv_n : 0.0);
    }
  }
  out.value = total * inv_n;
  out.gradient = std::move(grad);
  return out;
}

namespace {

double log_sum_exp(std::span<const double> xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

double ir_loss(std::pair<double, double> student_hard, std::pair<double, double> teacher_hard,
               std::span<const double> student_all) {
  if (student_all.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "ir_loss needs at least one candidate score");
  }
  const double s[2] = {student_hard.first, student_hard.second};
  const double t[2] = {teacher_hard.first, teacher_hard.second};
  const double ls = log_sum_exp(s), lt = log_sum_exp(t);
  double kl = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double log_ps = s[i] - ls, log_pt = t[i] - lt;
    kl += std::exp(log_ps) * (log_ps - log_pt);
  }
  const double nll = log_sum_exp(student_all) - student_all[0];
  return kl + nll;
}

LossValue evaluate_loss(LossKind kind, const TokenMatrix& doc) {
  switch (kind) {
    case LossKind::kNuclear: return nuclear_loss(doc);
    case LossKind::kSim: return sim_loss(doc);
    case LossKind::kL1: return l1_loss(doc);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown loss kind");
}

double finite_diff_check(LossKind kind, const TokenMatrix& doc, double step) {
  const auto analytic = evaluate_loss(kind, doc);
  if (!analytic.gradient) {
    throw Error(ErrorCode::kGradientAbsent, "loss has no analytic gradient at this point");
  }
  double worst = 0.0;
  Matrix probe = doc.vectors();
  for (std::size_t i = 0; i < probe.rows(); ++i)
    for (std::size_t c = 0; c < probe.cols(); ++c) {
      const double orig = probe(i, c);
      probe(i, c) = orig + step;
      const double up = evaluate_loss(kind, TokenMatrix(doc.doc_id(), probe)).value;
      probe(i, c) = orig - step;
      const double down = evaluate_loss(kind, TokenMatrix(doc.doc_id(), probe)).value;
      probe(i, c) = orig;
      const double numeric = (up - down) / (2.0 * step);
      const double exact = (*analytic.gradient)(i, c);
      const double denom = std::max({std::abs(numeric), std::abs(exact), 1e-6});
      worst = std::max(worst, std::abs(numeric - exact) / denom);
    }
  return worst;
}

}  // namespace tokenprune
