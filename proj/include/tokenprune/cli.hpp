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

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tokenprune/core.hpp"
#include "tokenprune/verify.hpp"

namespace tokenprune {

nlohmann::json to_json(const PruneReport& report);
nlohmann::json to_json(const VerifyReport& report);
nlohmann::json to_json(const DominancePartition& partition);

/// Exit codes of cli_main.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `tokenprune` command. args[0] is the program name.
/// Subcommands: prune, score, verify, stats, oracle2d.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tokenprune
