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

#include "tokenprune/cli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <CLI11.hpp>

#include "tokenprune/dominance.hpp"
#include "tokenprune/io.hpp"
#include "tokenprune/prune.hpp"
#include "tokenprune/scoring.hpp"

namespace tokenprune {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run_prune(const std::string& in_path, const std::string& out_path,
              const std::string& strategy, double theta, std::uint64_t seed, unsigned threads,
              std::ostream& out) {
  PruneConfig cfg;
  cfg.rng_seed = seed;
  cfg.workers = threads;
  if (strategy == "lp") {
    if (!(theta > 0.0 && theta <= 1.0)) throw UsageError("--theta must lie in (0, 1] for lp");
    cfg.strategy = Strategy::kLp;
    cfg.theta_lp = theta;
  } else {
    if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("--theta must lie in [0, 1] for norm");
    cfg.strategy = Strategy::kNorm;
    cfg.theta_n = theta;
  }
  // Prune exactly what will be stored.
  const CorpusIndex corpus = round_to_storage(load_corpus(in_path));
  auto [pruned, report] = prune_corpus(corpus, cfg);
  write_index_binary(pruned, out_path);
  json j = to_json(report);
  j["strategy"] = strategy;
  j["theta"] = theta;
  out << j.dump() << '\n';
  return kExitOk;
}

int run_score(const std::string& index_path, const std::string& queries_path,
              const std::string& variant, std::size_t top, std::ostream& out) {
  const CorpusIndex index = load_corpus(index_path);
  const auto queries = read_queries_jsonl(queries_path);
  const bool plain = variant == "plain";
  for (const auto& q : queries) {
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < index.size(); ++i) {
      const auto& doc = index.docs()[i];
      scored.emplace_back(plain ? colbert_score(q, doc) : colbert_p_score(q, doc), i);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    if (top > 0 && scored.size() > top) scored.resize(top);
    json ranking = json::array();
    for (const auto& [score, i] : scored) {
      ranking.push_back({{"doc_id", index.docs()[i].doc_id()}, {"score", score}});
    }
    out << json{{"query_id", q.query_id()}, {"variant", variant}, {"ranking", ranking}}.dump()
        << '\n';
  }
  return kExitOk;
}

int run_verify(const std::string& original_path, const std::string& pruned_path,
               std::size_t samples, std::uint64_t seed, unsigned threads, std::ostream& out) {
  // Both sides at storage precision, so a JSONL original pairs with its DPR1 prune.
  const auto report = verify_lossless(round_to_storage(load_corpus(original_path)),
                                      round_to_storage(load_corpus(pruned_path)), samples, seed,
                                      threads);
  out << to_json(report).dump() << '\n';
  return report.counterexamples.empty() ? kExitOk : kExitDataError;
}

int run_stats(const std::string& index_path, const std::string& original_path,
              std::ostream& out) {
  const CorpusIndex index = load_corpus(index_path);
  constexpr std::size_t kBins = 10;
  std::vector<std::size_t> counts(kBins, 0);
  std::size_t min_n = 0, max_n = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& doc = index.docs()[i];
    min_n = i == 0 ? doc.size() : std::min(min_n, doc.size());
    max_n = std::max(max_n, doc.size());
    for (std::size_t r = 0; r < doc.size(); ++r) {
      const auto bin = static_cast<std::size_t>(std::floor(norm2(doc.row(r)) * kBins));
      ++counts[std::min(bin, kBins - 1)];
    }
  }
  json edges = json::array();
  for (std::size_t b = 0; b <= kBins; ++b) edges.push_back(static_cast<double>(b) / kBins);
  json j = {
      {"docs", index.size()},
      {"tokens", index.total_tokens()},
      {"dim", index.dim() ? json(*index.dim()) : json(nullptr)},
      {"tokens_per_doc",
       {{"min", min_n},
        {"max", max_n},
        {"mean", index.size() ? static_cast<double>(index.total_tokens()) / index.size() : 0.0}}},
      {"norm_histogram", {{"edges", edges}, {"counts", counts}}},
  };
  if (!original_path.empty()) {
    const CorpusIndex original = load_corpus(original_path);
    const auto total = original.total_tokens();
    j["original_tokens"] = total;
    j["remaining_ratio"] =
        total ? json(static_cast<double>(index.total_tokens()) / total) : json(nullptr);
  }
  out << j.dump() << '\n';
  return kExitOk;
}

int run_oracle2d(const std::string& in_path, std::ostream& out) {
  const CorpusIndex corpus = load_corpus(in_path);
  if (corpus.dim() && *corpus.dim() != 2) {
    throw Error(ErrorCode::kDimensionNot2,
                "corpus has dimension " + std::to_string(*corpus.dim()));
  }
  for (const auto& doc : corpus.docs()) out << to_json(oracle_2d(doc)).dump() << '\n';
  return kExitOk;
}

}  // namespace

json to_json(const PruneReport& report) {
  json per_doc = json::array();
  for (const auto& d : report.per_doc) {
    per_doc.push_back({{"doc_id", d.doc_id}, {"n_before", d.n_before}, {"n_after", d.n_after}});
  }
  return {{"per_doc", per_doc},
          {"remaining_ratio", optional_number(report.remaining_ratio)},
          {"score_delta_max", optional_number(report.score_delta_max)},
          {"wall_time_seconds", report.wall_time_seconds}};
}

json to_json(const VerifyReport& report) {
  json ces = json::array();
  for (const auto& c : report.counterexamples) ces.push_back({{"doc_id", c.doc_id}, {"query", c.query}});
  return {{"docs_checked", report.docs_checked},
          {"queries_per_doc", report.queries_per_doc},
          {"max_abs_score_delta", report.max_abs_score_delta},
          {"counterexamples", ces},
          {"kendall_tau_vs_unpruned", optional_number(report.kendall_tau_vs_unpruned)}};
}

json to_json(const DominancePartition& p) {
  json evidence = json::array();
  for (auto e : p.evidence) evidence.push_back(std::string(evidence_name(e)));
  return {{"doc_id", p.doc_id}, {"kept", p.kept}, {"pruned", p.pruned}, {"evidence", evidence}};
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lossless and approximate token pruning for late-interaction indexes",
               args.empty() ? "tokenprune" : args.front()};
  app.require_subcommand(1);

  std::string in_path, out_path, strategy = "lp", index_path, queries_path, variant = "p",
                                 original_path, pruned_path;
  double theta = 1.0;
  std::uint64_t seed = 0;
  std::size_t samples = 10000, top = 0;
  unsigned threads = 1;

  auto* prune = app.add_subcommand("prune", "Prune a corpus and write a DPR1 index");
  prune->add_option("--in", in_path, "Input corpus (JSONL or DPR1)")->required();
  prune->add_option("--out", out_path, "Output DPR1 index")->required();
  prune->add_option("--strategy", strategy, "lp or norm")->check(CLI::IsMember({"lp", "norm"}));
  prune->add_option("--theta", theta, "theta_lp for lp, theta_n for norm");
  prune->add_option("--seed", seed);
  prune->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* score = app.add_subcommand("score", "Rank indexed documents for each query");
  score->add_option("--index", index_path)->required();
  score->add_option("--queries", queries_path, "Query JSONL")->required();
  score->add_option("--variant", variant, "p (ReLU) or plain")->check(CLI::IsMember({"p", "plain"}));
  score->add_option("--top", top, "Keep the best N documents (0 = all)");

  auto* verify = app.add_subcommand("verify", "Check that pruning left scores unchanged");
  verify->add_option("--original", original_path)->required();
  verify->add_option("--pruned", pruned_path)->required();
  verify->add_option("--samples", samples, "Random unit queries per document");
  verify->add_option("--seed", seed);
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* stats = app.add_subcommand("stats", "Token counts and norm histogram");
  stats->add_option("--index", index_path)->required();
  stats->add_option("--original", original_path, "Unpruned index for the remaining ratio");

  auto* oracle = app.add_subcommand("oracle2d", "Exact dominance partitions for 2D corpora");
  oracle->add_option("--in", in_path)->required();

  std::vector<const char*> argv;
  argv.push_back(args.empty() ? "tokenprune" : args.front().c_str());
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*prune) return run_prune(in_path, out_path, strategy, theta, seed, threads, out);
    if (*score) return run_score(index_path, queries_path, variant, top, out);
    if (*verify) return run_verify(original_path, pruned_path, samples, seed, threads, out);
    if (*stats) return run_stats(index_path, original_path, out);
    if (*oracle) return run_oracle2d(in_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace tokenprune
