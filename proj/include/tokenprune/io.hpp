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

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tokenprune/core.hpp"
#include "tokenprune/corpus.hpp"

namespace tokenprune {

/// One JSON object per line: {"doc_id": "...", "vectors": [[...], ...]}.
/// Blank lines are skipped. A document with no vectors takes the corpus
/// dimension, or an explicit "dim" field. Throws kParseError (with the line
/// number) or kInvariantViolation (with the doc id).
CorpusIndex read_corpus_jsonl(const std::filesystem::path& path);
CorpusIndex read_corpus_jsonl(std::istream& in);

/// Same line format with "query_id" in place of "doc_id".
std::vector<QueryMatrix> read_queries_jsonl(const std::filesystem::path& path);

/// DPR1 binary layout, little-endian:
///   "DPR1" | u32 version | u32 d | u64 doc count
///   per doc: u16 id length | id bytes | u32 n | n*d float32, row-major
/// Values are narrowed to float32 on write.
void write_index_binary(const CorpusIndex& index, const std::filesystem::path& path);
void write_index_binary(const CorpusIndex& index, std::ostream& out);

/// Throws kBadMagic, kVersionUnsupported, or kTruncatedFile naming the
/// document ordinal where the data ran out.
CorpusIndex read_index_binary(const std::filesystem::path& path);
CorpusIndex read_index_binary(std::istream& in);

/// Reads DPR1 when the file starts with the magic bytes, JSONL otherwise.
CorpusIndex load_corpus(const std::filesystem::path& path);

/// Copy with every entry rounded to float32, the on-disk precision.
CorpusIndex round_to_storage(const CorpusIndex& index);

}  // namespace tokenprune
