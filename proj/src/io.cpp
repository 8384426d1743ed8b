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

#include "tokenprune/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace tokenprune {

namespace {

using json = nlohmann::json;

constexpr std::array<char, 4> kMagic = {'D', 'P', 'R', '1'};

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  return in;
}

struct ParsedLine {
  std::size_t line_no;
  std::string id;
  std::vector<std::vector<double>> rows;
  std::optional<std::size_t> dim;
};

ParsedLine parse_line(const std::string& text, std::size_t line_no, const char* id_key) {
  auto fail = [&](const std::string& why) -> ParsedLine {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + why);
  };
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    return fail(e.what());
  }
  if (!obj.is_object()) return fail("expected a JSON object");
  if (!obj.contains(id_key) || !obj[id_key].is_string()) {
    return fail(std::string("missing string field \"") + id_key + "\"");
  }
  if (!obj.contains("vectors") || !obj["vectors"].is_array()) {
    return fail("missing array field \"vectors\"");
  }
  ParsedLine out{line_no, obj[id_key].get<std::string>(), {}, std::nullopt};
  for (const auto& row : obj["vectors"]) {
    if (!row.is_array()) return fail("vectors must be an array of arrays");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) return fail("vector entries must be numbers");
      r.push_back(v.get<double>());
    }
    out.rows.push_back(std::move(r));
  }
  if (obj.contains("dim")) {
    if (!obj["dim"].is_number_unsigned()) return fail("\"dim\" must be a positive integer");
    out.dim = obj["dim"].get<std::size_t>();
  }
  return out;
}

std::vector<ParsedLine> parse_lines(std::istream& in, const char* id_key) {
  std::vector<ParsedLine> lines;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(parse_line(text, line_no, id_key));
  }
  return lines;
}

Matrix to_matrix(const ParsedLine& p, std::size_t dim) {
  try {
    return Matrix::from_rows(p.rows, dim);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvariantViolation, "'" + p.id + "' (line " +
                                                    std::to_string(p.line_no) + "): " + e.what());
  }
}

// Little-endian primitive writers/readers.
template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void set_context(std::string ctx) { ctx_ = std::move(ctx); }

  void bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw Error(ErrorCode::kTruncatedFile, "file ends inside " + ctx_);
    }
  }

  template <typename T>
  T get() {
    std::array<unsigned char, sizeof(T)> b{};
    bytes(reinterpret_cast<char*>(b.data()), b.size());
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return static_cast<T>(v);
  }

 private:
  std::istream& in_;
  std::string ctx_ = "header";
};

}  // namespace

CorpusIndex read_corpus_jsonl(std::istream& in) {
  const auto lines = parse_lines(in, "doc_id");
  std::optional<std::size_t> dim;
  for (const auto& p : lines) {
    if (!p.rows.empty()) {
      dim = p.rows.front().size();
      break;
    }
    if (p.dim) {
      dim = p.dim;
      break;
    }
  }
  CorpusIndex index;
  for (const auto& p : lines) {
    if (!dim) {
      throw Error(ErrorCode::kInvariantViolation,
                  "'" + p.id + "': cannot infer the dimension of an empty document");
    }
    try {
      index.add(TokenMatrix(p.id, to_matrix(p, p.dim.value_or(*dim))));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvariantViolation) throw;
      throw Error(ErrorCode::kInvariantViolation, "'" + p.id + "': " + e.what());
    }
  }
  return index;
}

CorpusIndex read_corpus_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_corpus_jsonl(in);
}

std::vector<QueryMatrix> read_queries_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<QueryMatrix> out;
  for (const auto& p : parse_lines(in, "query_id")) {
    if (p.rows.empty()) {
      throw Error(ErrorCode::kInvariantViolation, "query '" + p.id + "' has no vectors");
    }
    try {
      out.push_back(validate_query_matrix(QueryMatrix(p.id, to_matrix(p, 0))));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvariantViolation) throw;
      throw Error(ErrorCode::kInvariantViolation, "query '" + p.id + "': " + e.what());
    }
  }
  return out;
}

void write_index_binary(const CorpusIndex& index, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kIndexFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(index.dim().value_or(0)));
  put<std::uint64_t>(out, index.size());
  for (const auto& doc : index.docs()) {
    if (doc.doc_id().size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::kInvariantViolation, "doc id longer than 65535 bytes");
    }
    put<std::uint16_t>(out, static_cast<std::uint16_t>(doc.doc_id().size()));
    out.write(doc.doc_id().data(), static_cast<std::streamsize>(doc.doc_id().size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(doc.size()));
    for (double v : doc.vectors().data()) {
      put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed");
}

void write_index_binary(const CorpusIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  write_index_binary(index, out);
}

CorpusIndex read_index_binary(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) throw Error(ErrorCode::kBadMagic, "not a DPR1 index");
  const auto version = r.get<std::uint32_t>();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kVersionUnsupported, "index version " + std::to_string(version));
  }
  const auto dim = r.get<std::uint32_t>();
  const auto count = r.get<std::uint64_t>();
  if (count > 0 && dim == 0) {
    throw Error(ErrorCode::kInvariantViolation, "index with documents declares dimension 0");
  }

  CorpusIndex index;
  if (dim > 0) index.set_dim(dim);
  std::string id;
  for (std::uint64_t k = 0; k < count; ++k) {
    r.set_context("document " + std::to_string(k));
    id.resize(r.get<std::uint16_t>());
    r.bytes(id.data(), id.size());
    const auto n = r.get<std::uint32_t>();
    // Grow as values arrive so a bogus count hits TruncatedFile, not bad_alloc.
    const std::size_t values = static_cast<std::size_t>(n) * dim;
    std::vector<double> data;
    for (std::size_t e = 0; e < values; ++e) data.push_back(std::bit_cast<float>(r.get<std::uint32_t>()));
    index.add(TokenMatrix(id, Matrix(n, dim, std::move(data))));
  }
  return index;
}

CorpusIndex read_index_binary(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_index_binary(in);
}

CorpusIndex load_corpus(const std::filesystem::path& path) {
  std::array<char, 4> head{};
  {
    auto in = open_in(path);
    in.read(head.data(), head.size());
    if (in.gcount() != 4) head = {};
  }
  return head == kMagic ? read_index_binary(path) : read_corpus_jsonl(path);
}

CorpusIndex round_to_storage(const CorpusIndex& index) {
  CorpusIndex out;
  if (index.dim()) out.set_dim(*index.dim());
  for (const auto& doc : index.docs()) {
    Matrix m = doc.vectors();
    for (double& v : m.data()) v = static_cast<float>(v);
    out.add(TokenMatrix(doc.doc_id(), std::move(m)));
  }
  return out;
}

}  // namespace tokenprune
