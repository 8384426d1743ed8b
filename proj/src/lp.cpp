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

#include "tokenprune/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tokenprune {

namespace {

constexpr double kReducedCostEps = 1e-11;
constexpr double kPivotEps = 1e-11;

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Dense phase-1 tableau for  min 1^T s  s.t.  S A x + s = S b,  x, s >= 0,
// where S flips rows so that the right-hand side is nonnegative.
class Phase1Tableau {
 public:
  Phase1Tableau(const Matrix& a, std::span<const double> b)
      : k_(a.rows()), n_(a.cols()), width_(n_ + k_ + 1),
        t_(k_ * width_, 0.0), cost_(width_, 0.0), basis_(k_), sign_(k_, 1.0) {
    for (std::size_t i = 0; i < k_; ++i) {
      sign_[i] = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign_[i] * a(i, j);
      at(i, n_ + i) = 1.0;
      at(i, n_ + k_) = sign_[i] * b[i];
      basis_[i] = n_ + i;
    }
    // Reduced costs with every artificial basic: c_j - 1^T column_j.
    for (std::size_t j = 0; j < n_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < k_; ++i) s += at(i, j);
      cost_[j] = -s;
    }
    double z = 0.0;
    for (std::size_t i = 0; i < k_; ++i) z += at(i, n_ + k_);
    cost_[n_ + k_] = -z;
  }

  // Runs Bland pivots until no improving column admits a pivot.
  std::size_t solve(std::size_t max_iterations) {
    std::size_t iterations = 0;
    while (true) {
      bool pivoted = false;
      for (std::size_t e = 0; e < n_ + k_; ++e) {
        if (cost_[e] >= -kReducedCostEps) continue;
        const auto leave = ratio_test(e);
        if (leave == k_) continue;  // no usable pivot in this column
        if (iterations == max_iterations) {
          throw Error(ErrorCode::kIterationLimit,
                      "phase-1 simplex exceeded " + std::to_string(max_iterations) + " pivots");
        }
        pivot(leave, e);
        ++iterations;
        pivoted = true;
        break;
      }
      if (!pivoted) return iterations;
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, at(i, n_ + k_));
    }
    return x;
  }

  // y = -S w with w_i = 1 - reduced cost of artificial i (the phase-1 duals).
  std::vector<double> farkas_ray() const {
    std::vector<double> y(k_);
    for (std::size_t i = 0; i < k_; ++i) y[i] = -sign_[i] * (1.0 - cost_[n_ + i]);
    return y;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  std::size_t ratio_test(std::size_t e) const {
    std::size_t best = k_;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < k_; ++i) {
      const double coef = at(i, e);
      if (coef <= kPivotEps) continue;
      const double ratio = std::max(0.0, at(i, n_ + k_)) / coef;
      if (best == k_ || ratio < best_ratio - 1e-14) {
        best = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-14 && basis_[i] < basis_[best]) {
        best = i;  // Bland: lowest-index leaving variable among ties
      }
    }
    return best;
  }

  void pivot(std::size_t p, std::size_t e) {
    const double inv = 1.0 / at(p, e);
    for (std::size_t j = 0; j < width_; ++j) at(p, j) *= inv;
    at(p, e) = 1.0;
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == p) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(p, j);
      at(i, e) = 0.0;
    }
    const double f = cost_[e];
    for (std::size_t j = 0; j < width_; ++j) cost_[j] -= f * at(p, j);
    cost_[e] = 0.0;
    basis_[p] = e;
  }

  std::size_t k_, n_, width_;
  std::vector<double> t_;
  std::vector<double> cost_;  // reduced costs; last entry is -objective
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
};

}  // namespace

bool is_valid_witness(const Matrix& a, std::span<const double> b, std::span<const double> x,
                      double tol) {
  if (x.size() != a.cols() || b.size() != a.rows()) return false;
  for (double v : x) {
    if (!(v >= -tol)) return false;
  }
  const double bound = tol * (1.0 + inf_norm(b));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!(std::abs(dot(a.row(i), x) - b[i]) <= bound)) return false;
  }
  return true;
}

bool is_valid_certificate(const Matrix& a, std::span<const double> b, std::span<const double> y,
                          double tol) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * y[i];
    if (!(s >= -tol)) return false;
  }
  return dot(b, y) <= -tol;
}

FeasibilityResult lp_feasible(const Matrix& a, std::span<const double> b, double tol) {
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "rhs has length " + std::to_string(b.size()) +
                                               ", matrix has " + std::to_string(a.rows()) +
                                               " rows");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidConfig, "tolerance must be positive");
  for (double v : a.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteEntry, "LP matrix");
  for (double v : b)
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteEntry, "LP rhs");

  FeasibilityResult result;
  Phase1Tableau tableau(a, b);
  result.iterations = tableau.solve(50 * (a.rows() + a.cols()));

  auto x = tableau.primal();
  if (is_valid_witness(a, b, x, tol)) {
    result.status = FeasibilityStatus::kFeasible;
    result.witness = std::move(x);
    return result;
  }

  auto y = tableau.farkas_ray();
  const double scale = inf_norm(y);
  if (scale > 0.0) {
    for (double& v : y) v /= scale;
    if (is_valid_certificate(a, b, y, tol)) {
      result.status = FeasibilityStatus::kInfeasible;
      result.certificate = std::move(y);
      return result;
    }
  }
  throw Error(ErrorCode::kNumericalBreakdown,
              "phase-1 simplex ended with neither a valid witness nor a valid certificate");
}

}  // namespace tokenprune
