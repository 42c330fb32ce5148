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

#include "fairrank/rerank.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "fairrank/errors.hpp"

namespace fairrank {

namespace {

constexpr double kNoCandidate = -std::numeric_limits<double>::infinity();

// Next unconsumed score of an attribute, or -inf once its pool is empty.
double next_score(const RankingTask& task, const std::vector<std::size_t>& counts, AttributeId a) {
  const auto& scores = task.pool().scores[a];
  return counts[a] < scores.size() ? scores[counts[a]] : kNoCandidate;
}

bool exhausted(const RankingTask& task, const std::vector<std::size_t>& counts, AttributeId a) {
  return counts[a] >= task.pool().scores[a].size();
}

// Highest next score; ties go to the lowest index.
std::optional<AttributeId> argmax_score(const RankingTask& task,
                                        const std::vector<std::size_t>& counts,
                                        const std::vector<AttributeId>& set) {
  std::optional<AttributeId> best;
  double best_score = kNoCandidate;
  for (AttributeId a : set) {
    const double s = next_score(task, counts, a);
    if (!best || s > best_score) {
      best = a;
      best_score = s;
    }
  }
  return best;
}

// Lowest key; ties by higher next score, then lowest index.
template <typename KeyFn>
std::optional<AttributeId> argmin_key(const RankingTask& task,
                                      const std::vector<std::size_t>& counts,
                                      const std::vector<AttributeId>& set, KeyFn key) {
  std::optional<AttributeId> best;
  double best_key = 0.0;
  double best_score = kNoCandidate;
  for (AttributeId a : set) {
    const double k = key(a);
    const double s = next_score(task, counts, a);
    if (!best || k < best_key || (k == best_key && s > best_score)) {
      best = a;
      best_key = k;
      best_score = s;
    }
  }
  return best;
}

std::optional<AttributeId> apply_rule(const RankingTask& task, const SelectionState& state,
                                      AlgorithmChoice algorithm,
                                      const std::vector<AttributeId>& below_min,
                                      const std::vector<AttributeId>& below_max) {
  if (!below_min.empty()) return argmax_score(task, state.counts, below_min);
  if (below_max.empty()) return std::nullopt;

  const auto& p = task.desired().proportions;
  const double k = static_cast<double>(state.position);
  switch (algorithm) {
    case AlgorithmChoice::kDetCons:
      return argmin_key(task, state.counts, below_max, [&](AttributeId a) {
        return static_cast<double>(snapped_ceil(k * p[a])) / p[a];
      });
    case AlgorithmChoice::kDetRelaxed:
      return argmin_key(task, state.counts, below_max, [&](AttributeId a) {
        return static_cast<double>(
            snapped_ceil(static_cast<double>(snapped_ceil(k * p[a])) / p[a]));
      });
    default:
      return argmax_score(task, state.counts, below_max);
  }
}

RerankResult run_greedy(const RankingTask& task, AlgorithmChoice algorithm,
                        const RerankOptions& options) {
  RerankResult result;
  result.list.reserve(task.k_max());
  SelectionState state;
  state.counts.assign(task.num_attributes(), 0);

  for (std::size_t pos = 1; pos <= task.k_max(); ++pos) {
    state.position = pos;
    bool used_fallback = false;
    const auto chosen = select_next_attribute(task, state, algorithm, options, &used_fallback);
    if (!chosen) {
      if (options.fallback) {
        throw Error(ErrorCode::kInsufficientCandidates,
                    "every pool is exhausted at position " + std::to_string(pos));
      }
      throw Error(ErrorCode::kEmptyCandidateSets,
                  "no attribute is below its minimum or maximum at position " +
                      std::to_string(pos));
    }
    const AttributeId a = *chosen;
    result.list.push_back({a, task.pool().scores[a][state.counts[a]]});
    ++state.counts[a];
    if (used_fallback) ++result.fallback_events;
  }
  return result;
}

}  // namespace

std::string_view algorithm_name(AlgorithmChoice algorithm) {
  switch (algorithm) {
    case AlgorithmChoice::kVanilla: return "vanilla";
    case AlgorithmChoice::kDetGreedy: return "detgreedy";
    case AlgorithmChoice::kDetCons: return "detcons";
    case AlgorithmChoice::kDetRelaxed: return "detrelaxed";
    case AlgorithmChoice::kDetConstSort: return "detconstsort";
  }
  return "unknown";
}

AlgorithmChoice parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (AlgorithmChoice a : kAllAlgorithms) {
    if (algorithm_name(a) == lower) return a;
  }
  throw Error(ErrorCode::kUnknownAlgorithm, "unknown algorithm '" + std::string(name) + "'");
}

std::optional<AttributeId> select_next_attribute(const RankingTask& task,
                                                 const SelectionState& state,
                                                 AlgorithmChoice algorithm,
                                                 const RerankOptions& options,
                                                 bool* used_fallback) {
  const auto& p = task.desired().proportions;
  const double k = static_cast<double>(state.position);
  if (used_fallback) *used_fallback = false;

  std::vector<AttributeId> below_min;
  std::vector<AttributeId> below_max;
  for (AttributeId a = 0; a < task.num_attributes(); ++a) {
    const auto count = static_cast<long long>(state.counts[a]);
    const long long lo = snapped_floor(k * p[a]);
    if (count < lo) {
      below_min.push_back(a);
    } else if (count < snapped_ceil(k * p[a])) {
      below_max.push_back(a);
    }
  }

  auto chosen = apply_rule(task, state, algorithm, below_min, below_max);
  if (!chosen || !exhausted(task, state.counts, *chosen)) return chosen;
  if (!options.fallback) {
    throw Error(ErrorCode::kInsufficientCandidates,
                "attribute '" + task.labels()[*chosen] +
                    "' has no candidate left for position " + std::to_string(state.position));
  }

  // Same rule over the attributes that still have candidates; if neither set
  // has one, the best remaining score anywhere.
  auto drop_exhausted = [&](std::vector<AttributeId>& set) {
    std::erase_if(set, [&](AttributeId a) { return exhausted(task, state.counts, a); });
  };
  drop_exhausted(below_min);
  drop_exhausted(below_max);
  chosen = apply_rule(task, state, algorithm, below_min, below_max);
  if (!chosen) {
    std::vector<AttributeId> remaining;
    for (AttributeId a = 0; a < task.num_attributes(); ++a) {
      if (!exhausted(task, state.counts, a)) remaining.push_back(a);
    }
    chosen = argmax_score(task, state.counts, remaining);
  }
  if (chosen && used_fallback) *used_fallback = true;
  return chosen;
}

RerankResult rank_vanilla(const RankingTask& task) {
  RerankResult result;
  result.list.reserve(task.k_max());
  std::vector<std::size_t> counts(task.num_attributes(), 0);
  std::vector<AttributeId> all(task.num_attributes());
  for (AttributeId a = 0; a < all.size(); ++a) all[a] = a;

  while (result.list.size() < task.k_max()) {
    const auto a = argmax_score(task, counts, all);
    if (!a || exhausted(task, counts, *a)) {
      throw Error(ErrorCode::kInsufficientCandidates, "pools exhausted before k results");
    }
    result.list.push_back({*a, task.pool().scores[*a][counts[*a]]});
    ++counts[*a];
  }
  return result;
}

RerankResult rank_det_greedy(const RankingTask& task, const RerankOptions& options) {
  return run_greedy(task, AlgorithmChoice::kDetGreedy, options);
}

RerankResult rank_det_cons(const RankingTask& task, const RerankOptions& options) {
  return run_greedy(task, AlgorithmChoice::kDetCons, options);
}

RerankResult rank_det_relaxed(const RankingTask& task, const RerankOptions& options) {
  return run_greedy(task, AlgorithmChoice::kDetRelaxed, options);
}

// Interval constrained sorting. Positions are 1-based: a candidate placed
// when the counter equals k gets max_index k, and may sit at any position
// <= k. Bubbling a new candidate left moves its neighbour from j to j+1,
// which is allowed only while that neighbour's max_index >= j+1.
RerankResult rank_det_const_sort(const RankingTask& task, const RerankOptions& options) {
  const std::size_t n_attr = task.num_attributes();
  const auto& p = task.desired().proportions;

  RerankResult result;
  auto& items = result.list;
  std::vector<std::size_t> max_index;
  std::vector<std::size_t> counts(n_attr, 0);
  std::vector<long long> min_counts(n_attr, 0);
  std::vector<long long> next_min(n_attr, 0);

  for (std::size_t k = 1; items.size() < task.k_max(); ++k) {
    std::vector<AttributeId> changed;
    for (AttributeId a = 0; a < n_attr; ++a) {
      next_min[a] = snapped_floor(static_cast<double>(k) * p[a]);
      if (min_counts[a] < next_min[a]) changed.push_back(a);
    }
    if (changed.empty()) continue;

    std::stable_sort(changed.begin(), changed.end(), [&](AttributeId x, AttributeId y) {
      return next_score(task, counts, x) > next_score(task, counts, y);
    });

    for (AttributeId a : changed) {
      AttributeId source = a;
      if (exhausted(task, counts, a)) {
        if (!options.fallback) {
          throw Error(ErrorCode::kInsufficientCandidates,
                      "attribute '" + task.labels()[a] + "' needs candidate #" +
                          std::to_string(counts[a] + 1) + " but its pool is exhausted");
        }
        std::vector<AttributeId> remaining;
        for (AttributeId b = 0; b < n_attr; ++b) {
          if (!exhausted(task, counts, b)) remaining.push_back(b);
        }
        const auto sub = argmax_score(task, counts, remaining);
        if (!sub) throw Error(ErrorCode::kInsufficientCandidates, "every pool is exhausted");
        source = *sub;
        ++result.fallback_events;
      }

      items.push_back({source, task.pool().scores[source][counts[source]]});
      max_index.push_back(k);
      ++counts[source];

      // 0-based index i holds 1-based position i+1.
      std::size_t i = items.size() - 1;
      while (i > 0 && max_index[i - 1] >= i + 1 && items[i - 1].score < items[i].score) {
        std::swap(items[i - 1], items[i]);
        std::swap(max_index[i - 1], max_index[i]);
        --i;
      }
    }
    min_counts = next_min;
  }

  items.resize(task.k_max());
  return result;
}

RerankResult rank(const RankingTask& task, AlgorithmChoice algorithm,
                  const RerankOptions& options) {
  switch (algorithm) {
    case AlgorithmChoice::kVanilla: return rank_vanilla(task);
    case AlgorithmChoice::kDetGreedy: return rank_det_greedy(task, options);
    case AlgorithmChoice::kDetCons: return rank_det_cons(task, options);
    case AlgorithmChoice::kDetRelaxed: return rank_det_relaxed(task, options);
    case AlgorithmChoice::kDetConstSort: return rank_det_const_sort(task, options);
  }
  throw Error(ErrorCode::kUnknownAlgorithm, "unhandled algorithm value");
}

}  // namespace fairrank
