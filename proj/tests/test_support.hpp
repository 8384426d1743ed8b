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

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tokenprune/core.hpp"
#include "tokenprune/corpus.hpp"

namespace tokenprune::testing {

inline std::vector<double> random_direction(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> normal;
  std::vector<double> v(d);
  double len = 0.0;
  while (len < 1e-9) {
    for (double& x : v) x = normal(rng);
    len = norm2(v);
  }
  for (double& x : v) x /= len;
  return v;
}

/// n token vectors in d dimensions with norms uniform in [0, 1]. Half of the
/// documents lean toward a shared direction, the way trained encoders do.
inline Matrix random_rows(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool anisotropic = unit(rng) < 0.5;
  const auto mean = random_direction(rng, d);
  Matrix m(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto dir = random_direction(rng, d);
    if (anisotropic) {
      for (std::size_t c = 0; c < d; ++c) dir[c] += 1.5 * mean[c];
      const double len = norm2(dir);
      for (double& x : dir) x /= len;
    }
    const double r = unit(rng);
    for (std::size_t c = 0; c < d; ++c) m(i, c) = r * dir[c];
  }
  return m;
}

inline TokenMatrix random_document(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                   const std::string& id = "doc") {
  return TokenMatrix(id, random_rows(rng, n, d));
}

/// Random corpus with float32-representable entries.
inline CorpusIndex random_corpus(std::mt19937_64& rng, std::size_t docs, std::size_t max_n,
                                 std::size_t d) {
  std::uniform_int_distribution<std::size_t> count(1, max_n);
  CorpusIndex index;
  index.set_dim(d);
  for (std::size_t k = 0; k < docs; ++k) {
    Matrix m = random_rows(rng, count(rng), d);
    for (double& v : m.data()) v = static_cast<float>(v * (1.0 - 1e-6));
    index.add(TokenMatrix("doc-" + std::to_string(k), std::move(m)));
  }
  return index;
}

}  // namespace tokenprune::testing
