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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fairrank {

// Dense attribute index, 0..num_attributes-1 within one task.
using AttributeId = std::uint32_t;

// Target proportions indexed by AttributeId.
struct DesiredDistribution {
  std::vector<double> proportions;

  std::size_t size() const { return proportions.size(); }
  double operator[](AttributeId a) const { return proportions[a]; }
};

// Per-attribute candidate scores, each list in non-increasing order.
struct ScoredPool {
  std::vector<std::vector<double>> scores;

  std::size_t size() const { return scores.size(); }
  std::size_t total() const;
};

struct RankedItem {
  AttributeId attribute;
  double score;

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

// Positions are 1-indexed in every user-facing interface; the vector is
// 0-indexed as usual.
using RankedList = std::vector<RankedItem>;

// Unvalidated task as it arrives from JSON or from a generator. The three
// per-attribute vectors are parallel.
struct TaskInput {
  std::vector<std::string> labels;
  std::vector<double> desired;
  std::vector<std::vector<double>> pools;
  std::size_t k_max = 0;
};

struct ValidateOptions {
  // Re-sort unsorted pools instead of failing with kPoolNotSorted.
  bool allow_unsorted = false;
};

// A validated re-ranking problem. Immutable once constructed, so instances
// can be shared freely between worker threads.
class RankingTask {
 public:
  const std::vector<std::string>& labels() const { return labels_; }
  const DesiredDistribution& desired() const { return desired_; }
  const ScoredPool& pool() const { return pool_; }
  std::size_t k_max() const { return k_max_; }
  std::size_t num_attributes() const { return labels_.size(); }

  // Labels of attributes removed because their desired proportion was 0.
  const std::vector<std::string>& dropped_labels() const { return dropped_; }

  // All pool scores merged in descending order; the NDCG ideal ranking.
  std::vector<double> ideal_scores() const;

 private:
  friend RankingTask validate_task(TaskInput input, const ValidateOptions& options);

  std::vector<std::string> labels_;
  std::vector<std::string> dropped_;
  DesiredDistribution desired_;
  ScoredPool pool_;
  std::size_t k_max_ = 0;
};

// Checks every task invariant, drops zero-proportion attributes and
// renormalizes the remaining proportions. Throws fairrank::Error.
RankingTask validate_task(TaskInput input, const ValidateOptions& options = {});

// Checks that proportions are finite, non-negative and sum to 1 within
// kNormalizationTolerance, and that labels are unique. Throws Error.
void check_distribution(std::span<const std::string> labels, std::span<const double> proportions);

// Normalized counts. Whether the counts describe the qualified candidates
// (equal opportunity) or all candidates (demographic parity) is the
// caller's choice.
DesiredDistribution empirical_distribution(std::span<const std::uint64_t> counts);

// Tolerance applied to the sum of desired proportions.
inline constexpr double kNormalizationTolerance = 1e-9;

// floor/ceil of a product such as k*p, snapping values within 1e-12 of an
// integer onto that integer first.
long long snapped_floor(double x);
long long snapped_ceil(double x);

}  // namespace fairrank
