// Copyright 2026 The Authors.
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
#include <optional>
#include <string_view>
#include <vector>

#include "fairrank/task.hpp"

namespace fairrank {

enum class AlgorithmChoice {
  kVanilla,
  kDetGreedy,
  kDetCons,
  kDetRelaxed,
  kDetConstSort,
};

inline constexpr AlgorithmChoice kAllAlgorithms[] = {
    AlgorithmChoice::kVanilla,    AlgorithmChoice::kDetGreedy,    AlgorithmChoice::kDetCons,
    AlgorithmChoice::kDetRelaxed, AlgorithmChoice::kDetConstSort,
};

// Lower-case names used on the command line and in CSV output.
std::string_view algorithm_name(AlgorithmChoice algorithm);
// Throws Error(kUnknownAlgorithm). Matching is case-insensitive.
AlgorithmChoice parse_algorithm(std::string_view name);

struct RerankOptions {
  // When the attribute chosen by the selection rule has run out of
  // candidates, pick the next-best attribute under the same rule instead
  // of failing with kInsufficientCandidates.
  bool fallback = false;
};

struct RerankResult {
  RankedList list;
  std::size_t fallback_events = 0;
};

// Per-attribute consumption state of the greedy algorithms.
struct SelectionState {
  std::vector<std::size_t> counts;
  std::size_t position = 1;  // 1-based rank being filled next
};

// One step of DetGreedy / DetCons / DetRelaxed: the attribute to place at
// state.position. Returns nullopt only when no attribute can be selected.
// Sets *used_fallback when the fallback rule produced the answer.
// Attribute the greedy rule picks for state.position. Empty when neither
// candidate set has a member. If the pick has no candidate left this throws
// Error(kInsufficientCandidates), or with options.fallback re-applies the
// rule to attributes that still have candidates and sets *used_fallback.
std::optional<AttributeId> select_next_attribute(const RankingTask& task,
                                                 const SelectionState& state,
                                                 AlgorithmChoice algorithm,
                                                 const RerankOptions& options,
                                                 bool* used_fallback = nullptr);

RerankResult rank_vanilla(const RankingTask& task);
RerankResult rank_det_greedy(const RankingTask& task, const RerankOptions& options = {});
RerankResult rank_det_cons(const RankingTask& task, const RerankOptions& options = {});
RerankResult rank_det_relaxed(const RankingTask& task, const RerankOptions& options = {});
RerankResult rank_det_const_sort(const RankingTask& task, const RerankOptions& options = {});

RerankResult rank(const RankingTask& task, AlgorithmChoice algorithm,
                  const RerankOptions& options = {});

}  // namespace fairrank
