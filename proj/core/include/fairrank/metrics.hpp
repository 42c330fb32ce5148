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
#include <span>
#include <vector>

#include "fairrank/task.hpp"

namespace fairrank {

// Bias and utility measures of one ranked list against a desired
// distribution. Skew values and NDCG are taken at depth `k`; NDKL and the
// infeasibility counters always cover the whole list.
struct MetricsReport {
  std::vector<double> skew_at_k;  // indexed by AttributeId
  double min_skew = 0.0;
  double max_skew = 0.0;
  double ndkl = 0.0;
  double ndcg = 1.0;
  std::size_t infeasible_index = 0;
  std::size_t infeasible_count = 0;
  std::size_t k = 0;

  bool feasible() const { return infeasible_index == 0; }
};

// Lower bound applied to a prefix proportion before taking its log in skew.
inline constexpr double kSkewEpsilonNumerator = 1e-6;

// Default evaluation depth when none is given.
inline constexpr std::size_t kDefaultDepth = 100;

std::vector<double> proportions_at_k(std::span<const RankedItem> list,
                                     std::size_t num_attributes, std::size_t k);

// log_e(top-k proportion / desired proportion) for one attribute.
double skew_at_k(std::span<const RankedItem> list, const DesiredDistribution& desired,
                 AttributeId attribute, std::size_t k);

// Extremes of skew_at_k over attributes with positive desired proportion.
double min_skew_at_k(std::span<const RankedItem> list, const DesiredDistribution& desired,
                     std::size_t k);
double max_skew_at_k(std::span<const RankedItem> list, const DesiredDistribution& desired,
                     std::size_t k);

// Natural-log KL divergence d_KL(p || q), with 0*log(0) taken as 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Normalized discounted cumulative KL-divergence over every prefix.
double ndkl(std::span<const RankedItem> list, const DesiredDistribution& desired);

// Scores act as relevance; `ideal_scores` is the descending merge of every
// candidate score available for the task.
double ndcg(std::span<const RankedItem> list, std::span<const double> ideal_scores);

struct Infeasibility {
  std::size_t index = 0;  // prefixes with at least one floor violation
  std::size_t count = 0;  // (attribute, prefix) pairs in violation
};

// First prefix length k (1-based) is evaluated first; stops at |list|.
Infeasibility infeasibility(std::span<const RankedItem> list, const DesiredDistribution& desired);
std::size_t infeasible_index(std::span<const RankedItem> list, const DesiredDistribution& desired);
std::size_t infeasible_count(std::span<const RankedItem> list, const DesiredDistribution& desired);

// One-pass evaluation of every measure. `depth` defaults to
// min(kDefaultDepth, |list|).
MetricsReport measure(std::span<const RankedItem> list, const DesiredDistribution& desired,
                      std::span<const double> ideal_scores,
                      std::optional<std::size_t> depth = std::nullopt);

}  // namespace fairrank
