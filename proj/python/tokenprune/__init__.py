# Copyright 2026 The tokenprune Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Dominance-based token pruning for late-interaction retrieval indexes."""

from ._core import (
    CorpusIndex,
    DominancePartition,
    FeasibilityResult,
    TokenpruneError,
    cli_main,
    colbert_p_score,
    colbert_score,
    falsify_by_sampling,
    finite_diff_check,
    global_partition,
    ir_loss,
    l1_loss,
    load_corpus,
    local_dominance_test,
    lp_feasible,
    lp_prune,
    norm_prune,
    nuclear_loss,
    oracle_2d,
    project,
    prune_corpus,
    rank_correlation,
    read_corpus_jsonl,
    read_index_binary,
    reduced_document,
    select_rank,
    self_match_prefilter,
    sim_loss,
    svd,
    verify_lossless,
    write_index_binary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
