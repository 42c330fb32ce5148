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

#include "fairrank/task.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "fairrank/errors.hpp"

namespace fairrank {

namespace {

constexpr double kIntegerSnap = 1e-12;

bool near_integer(double x, double r) {
  return std::abs(x - r) <= kIntegerSnap * std::max(1.0, std::abs(x));
}

}  // namespace

long long snapped_floor(double x) {
  const double r = std::nearbyint(x);
  if (near_integer(x, r)) return static_cast<long long>(r);
  return static_cast<long long>(std::floor(x));
}

long long snapped_ceil(double x) {
  const double r = std::nearbyint(x);
  if (near_integer(x, r)) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

std::size_t ScoredPool::total() const {
  std::size_t n = 0;
  for (const auto& s : scores) n += s.size();
  return n;
}

std::vector<double> RankingTask::ideal_scores() const {
  std::vector<double> all;
  all.reserve(pool_.total());
  for (const auto& s : pool_.scores) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end(), std::greater<>());
  return all;
}

void check_distribution(std::span<const std::string> labels, std::span<const double> proportions) {
  if (labels.size() != proportions.size()) {
    throw Error(ErrorCode::kSupportMismatch, "labels and desired proportions differ in length");
  }
  if (proportions.empty()) throw Error(ErrorCode::kDistributionNotNormalized, "no attributes");

  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::kDuplicateAttribute, "attribute '" + label + "' listed twice");
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < proportions.size(); ++i) {
    const double p = proportions[i];
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidValue,
                  "desired proportion of '" + labels[i] + "' is not finite");
    }
    if (p < 0.0) {
      throw Error(ErrorCode::kDistributionNotNormalized,
                  "desired proportion of '" + labels[i] + "' is negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::kDistributionNotNormalized,
                "desired proportions sum to " + std::to_string(sum));
  }
}

RankingTask validate_task(TaskInput input, const ValidateOptions& options) {
  if (input.k_max < 1) throw Error(ErrorCode::kInvalidK, "k must be at least 1");

  const std::size_t n = input.desired.size();
  if (input.labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) input.labels.push_back("a" + std::to_string(i + 1));
  }
  if (input.pools.size() != n) {
    throw Error(ErrorCode::kMissingPool, "every attribute needs a (possibly empty) pool");
  }
  check_distribution(input.labels, input.desired);
  const double sum = std::accumulate(input.desired.begin(), input.desired.end(), 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    auto& scores = input.pools[i];
    for (double s : scores) {
      if (!std::isfinite(s)) {
        throw Error(ErrorCode::kInvalidValue, "pool of '" + input.labels[i] +
                                                  "' holds a non-finite score");
      }
    }
    if (!std::is_sorted(scores.begin(), scores.end(), std::greater<>())) {
      if (!options.allow_unsorted) {
        throw Error(ErrorCode::kPoolNotSorted,
                    "pool of '" + input.labels[i] + "' is not in descending order");
      }
      std::stable_sort(scores.begin(), scores.end(), std::greater<>());
    }
  }

  RankingTask task;
  task.k_max_ = input.k_max;
  for (std::size_t i = 0; i < n; ++i) {
    if (input.desired[i] == 0.0) {
      task.dropped_.push_back(std::move(input.labels[i]));
      continue;
    }
    task.labels_.push_back(std::move(input.labels[i]));
    task.desired_.proportions.push_back(input.desired[i] / sum);
    task.pool_.scores.push_back(std::move(input.pools[i]));
  }

  if (task.pool_.total() < task.k_max_) {
    throw Error(ErrorCode::kInsufficientCandidates,
                "pools hold " + std::to_string(task.pool_.total()) + " candidates but k is " +
                    std::to_string(task.k_max_));
  }
  return task;
}

DesiredDistribution empirical_distribution(std::span<const std::uint64_t> counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw Error(ErrorCode::kAllZeroCounts, "all counts are zero");
  DesiredDistribution out;
  out.proportions.reserve(counts.size());
  for (std::uint64_t c : counts) {
    out.proportions.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return out;
}

}  // namespace fairrank
