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

#include "tokenprune/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tokenprune {

namespace {

constexpr int kMaxSweeps = 100;

using Column = std::vector<double>;

double col_dot(const Column& a, const Column& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void rotate(Column& p, Column& q, double c, double s) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p[i], y = q[i];
    p[i] = c * x - s * y;
    q[i] = s * x + c * y;
  }
}

// Appends unit vectors until `basis` holds `target` orthonormal columns of
// length `len`, using Gram-Schmidt on the canonical basis.
void complete_basis(std::vector<Column>& basis, std::size_t len, std::size_t target) {
  while (basis.size() < target) {
    Column best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < len; ++e) {
      Column v(len, 0.0);
      v[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const double proj = col_dot(v, b);
          for (std::size_t i = 0; i < len; ++i) v[i] -= proj * b[i];
        }
      }
      const double nv = std::sqrt(col_dot(v, v));
      if (nv > best_norm) {
        best_norm = nv;
        best = std::move(v);
      }
    }
    for (double& x : best) x /= best_norm;
    basis.push_back(std::move(best));
  }
}

struct JacobiResult {
  std::vector<Column> left;   // orthonormal, length = rows of g
  std::vector<double> sigma;  // non-increasing
  std::vector<Column> right;  // orthonormal, length = cols of g
};

// One-sided Jacobi on g (rows x cols, cols <= rows): g J = W with orthogonal
// columns; sigma_j = |W_j|, left_j = W_j / sigma_j, right = J.
JacobiResult jacobi(const Matrix& g, double tol) {
  const std::size_t rows = g.rows(), cols = g.cols();
  std::vector<Column> w(cols, Column(rows));
  std::vector<Column> j(cols, Column(cols, 0.0));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) w[c][r] = g(r, c);
    j[c][c] = 1.0;
  }

  bool converged = cols < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = col_dot(w[p], w[p]);
        const double beta = col_dot(w[q], w[q]);
        const double gamma = col_dot(w[p], w[q]);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(w[p], w[q], c, s);
        rotate(j[p], j[q], c, s);
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kConvergenceFailure,
                "Jacobi SVD did not converge within " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<double> norms(cols);
  for (std::size_t c = 0; c < cols; ++c) norms[c] = std::sqrt(col_dot(w[c], w[c]));
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  JacobiResult out;
  const double top = cols ? norms[order.front()] : 0.0;
  const double floor = top * 1e-14 * static_cast<double>(rows + cols);
  std::size_t nonzero = 0;
  for (auto c : order) {
    out.sigma.push_back(norms[c]);
    out.right.push_back(j[c]);
    if (norms[c] > floor && norms[c] > 0.0) ++nonzero;
  }
  for (std::size_t k = 0; k < nonzero; ++k) {
    Column u = w[order[k]];
    for (double& x : u) x /= norms[order[k]];
    out.left.push_back(std::move(u));
  }
  complete_basis(out.left, rows, cols);
  return out;
}

Matrix from_columns(const std::vector<Column>& cols, std::size_t len) {
  Matrix m(len, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < len; ++r) m(r, c) = cols[c][r];
  return m;
}

}  // namespace

SvdFactors svd_rows(const Matrix& rows, double tol) {
  const std::size_t n = rows.rows(), d = rows.cols();
  if (n == 0) throw Error(ErrorCode::kEmptyDocument, "SVD of a document without tokens");
  SvdFactors f;
  if (n <= d) {
    // Columns of rows^T are the tokens: rows^T J = W.
    auto r = jacobi(rows.transposed(), tol);
    f.u = from_columns(r.left, d);
    f.v = from_columns(r.right, n);
    f.sigma = std::move(r.sigma);
  } else {
    // rows J = W, so rows^T = J W^T.
    auto r = jacobi(rows, tol);
    f.u = from_columns(r.right, d);
    f.v = from_columns(r.left, n);
    f.sigma = std::move(r.sigma);
  }
  return f;
}

SvdFactors svd(const TokenMatrix& doc, double tol) { return svd_rows(doc.vectors(), tol); }

std::size_t select_rank(std::span<const double> sigma, double theta_lp) {
  const double total = std::accumulate(sigma.begin(), sigma.end(), 0.0);
  if (!(total > 0.0)) return 0;
  double covered = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    covered += sigma[k];
    if (covered / total >= theta_lp) return k + 1;
  }
  return sigma.size();
}

Matrix reduced_document(const TokenMatrix& doc, double theta_lp, double tol) {
  const std::size_t n = doc.size();
  if (n == 0) return Matrix(0, 0);
  const auto f = svd(doc, tol);
  const std::size_t k = select_rank(f.sigma, theta_lp);
  Matrix out(k, n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < n; ++i) out(r, i) = f.sigma[r] * f.v(i, r);
  return out;
}

}  // namespace tokenprune
