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
#include <optional>
#include <string>
#include <vector>

#include "tokenprune/core.hpp"

namespace tokenprune {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// Ordered collection of documents sharing one embedding dimension.
class CorpusIndex {
 public:
  CorpusIndex() = default;

  /// Validates the matrix and appends it. Throws kInvariantViolation on a
  /// dimension clash or a repeated doc id.
  void add(TokenMatrix doc);

  std::optional<std::size_t> dim() const noexcept { return dim_; }
  /// Fixes the dimension of a still-empty index.
  void set_dim(std::size_t d);

  const std::vector<TokenMatrix>& docs() const noexcept { return docs_; }
  std::size_t size() const noexcept { return docs_.size(); }
  std::size_t total_tokens() const noexcept;
  std::uint32_t format_version() const noexcept { return kIndexFormatVersion; }

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

 private:
  std::optional<std::size_t> dim_;
  std::vector<TokenMatrix> docs_;
  std::vector<std::string> sorted_ids_;
};

}  // namespace tokenprune
