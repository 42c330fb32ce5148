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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "fairrank/errors.hpp"
#include "test_util.hpp"
#include "fairrank/task.hpp"
#include "gtest/gtest.h"

namespace fairrank {
namespace {

using testing::code_of;

TaskInput four_singletons_input() {
  TaskInput in;
  in.labels = {"a1", "a2", "a3", "a4"};
  in.desired = {0.4, 0.4, 0.1, 0.1};
  in.pools = {{0.1}, {0.2}, {0.3}, {0.4}};
  in.k_max = 4;
  return in;
}

TEST(EmpiricalDistribution, QualifiedGenderCounts) {
  const std::vector<std::uint64_t> counts = {32000, 48000};
  const auto d = empirical_distribution(counts);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d[0], 0.4);
  EXPECT_DOUBLE_EQ(d[1], 0.6);
}

TEST(EmpiricalDistribution, SingleAttributeAndExactDivision) {
  const std::vector<std::uint64_t> one = {5};
  EXPECT_DOUBLE_EQ(empirical_distribution(one)[0], 1.0);

  const std::vector<std::uint64_t> three = {1, 1, 2};
  const auto d = empirical_distribution(three);
  EXPECT_DOUBLE_EQ(d[0], 0.25);
  EXPECT_DOUBLE_EQ(d[1], 0.25);
  EXPECT_DOUBLE_EQ(d[2], 0.5);
}

TEST(EmpiricalDistribution, AllZeroCountsRejected) {
  const std::vector<std::uint64_t> zeros = {0, 0, 0};
  EXPECT_EQ(code_of([&] { empirical_distribution(zeros); }), ErrorCode::kAllZeroCounts);
}

TEST(EmpiricalDistribution, RandomCountsAreNormalizedAndScaleInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> count(0, 100000);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_int_distribution<std::uint64_t> factor(2, 1000);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::uint64_t> counts(size(rng));
    for (auto& c : counts) c = count(rng);
    counts[0] += 1;  // non-degenerate
    const auto d = empirical_distribution(counts);
    const double sum = std::accumulate(d.proportions.begin(), d.proportions.end(), 0.0);
    EXPECT_NEAR(sum, 1.0, kNormalizationTolerance);
    for (double p : d.proportions) EXPECT_GE(p, 0.0);

    const std::uint64_t m = factor(rng);
    std::vector<std::uint64_t> scaled = counts;
    for (auto& c : scaled) c *= m;
    const auto ds = empirical_distribution(scaled);
    for (std::size_t i = 0; i < counts.size(); ++i) EXPECT_NEAR(d[i], ds[i], 1e-12);
  }
}

TEST(ValidateTask, WellFormedTaskIsUnchanged) {
  const RankingTask task = validate_task(four_singletons_input());
  EXPECT_EQ(task.k_max(), 4u);
  EXPECT_EQ(task.labels(), (std::vector<std::string>{"a1", "a2", "a3", "a4"}));
  EXPECT_EQ(task.pool().scores[3], std::vector<double>{0.4});
  EXPECT_DOUBLE_EQ(task.desired()[0], 0.4);
  EXPECT_EQ(task.ideal_scores(), (std::vector<double>{0.4, 0.3, 0.2, 0.1}));
}

TEST(ValidateTask, UnnormalizedDistribution) {
  TaskInput in = four_singletons_input();
  in.desired = {0.4, 0.4, 0.1, 0.08};
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kDistributionNotNormalized);

  in.desired = {0.6, 0.5, 0.0, -0.1};
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kDistributionNotNormalized);
}

TEST(ValidateTask, InsufficientCandidates) {
  TaskInput in;
  in.desired = {0.5, 0.5};
  in.pools = {{0.9, 0.8}, {0.7}};
  in.k_max = 4;
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kInsufficientCandidates);
}

TEST(ValidateTask, UnsortedPoolRejectedOrResorted) {
  TaskInput in;
  in.desired = {1.0};
  in.pools = {{0.2, 0.9, 0.5}};
  in.k_max = 2;
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kPoolNotSorted);

  const RankingTask task = validate_task(in, ValidateOptions{.allow_unsorted = true});
  EXPECT_EQ(task.pool().scores[0], (std::vector<double>{0.9, 0.5, 0.2}));
}

TEST(ValidateTask, NonFiniteValuesRejected) {
  TaskInput in = four_singletons_input();
  in.pools[1] = {std::numeric_limits<double>::quiet_NaN()};
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kInvalidValue);

  in = four_singletons_input();
  in.pools[2] = {std::numeric_limits<double>::infinity()};
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kInvalidValue);

  in = four_singletons_input();
  in.desired[0] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kInvalidValue);
}

TEST(ValidateTask, StructuralErrors) {
  TaskInput in = four_singletons_input();
  in.k_max = 0;
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kInvalidK);

  in = four_singletons_input();
  in.labels[1] = "a1";
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kDuplicateAttribute);

  in = four_singletons_input();
  in.pools.pop_back();
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kMissingPool);
}

TEST(ValidateTask, ZeroProportionAttributesAreDropped) {
  TaskInput in;
  in.labels = {"x", "gone", "y"};
  in.desired = {0.5, 0.0, 0.5};
  in.pools = {{0.3}, {0.99, 0.98}, {0.2}};
  in.k_max = 2;
  const RankingTask task = validate_task(in);
  EXPECT_EQ(task.labels(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(task.dropped_labels(), std::vector<std::string>{"gone"});
  EXPECT_EQ(task.num_attributes(), 2u);
  EXPECT_EQ(task.pool().scores[1], std::vector<double>{0.2});

  // The dropped pool no longer counts toward k.
  in.k_max = 3;
  EXPECT_EQ(code_of([&] { validate_task(in); }), ErrorCode::kInsufficientCandidates);
}

TEST(ValidateTask, GeneratesLabelsWhenAbsent) {
  TaskInput in;
  in.desired = {0.25, 0.75};
  in.pools = {{0.5}, {0.4}};
  in.k_max = 1;
  EXPECT_EQ(validate_task(in).labels(), (std::vector<std::string>{"a1", "a2"}));
}

TEST(SnappedRounding, ProductsNearIntegersSnap) {
  EXPECT_EQ(snapped_floor(0.3 * 10), 3);
  EXPECT_EQ(snapped_ceil(0.3 * 10), 3);
  EXPECT_EQ(snapped_floor(0.1 * 3), 0);
  EXPECT_EQ(snapped_ceil(0.1 * 3), 1);
  EXPECT_EQ(snapped_floor(0.7 * 10), 7);  // 7.000000000000001
  EXPECT_EQ(snapped_ceil(0.7 * 10), 7);
  EXPECT_EQ(snapped_floor(2.5), 2);
  EXPECT_EQ(snapped_ceil(2.5), 3);
  EXPECT_EQ(snapped_floor(0.0), 0);
  EXPECT_EQ(snapped_ceil(0.0), 0);
}

}  // namespace
}  // namespace fairrank
