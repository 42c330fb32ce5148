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
#include <filesystem>
#include <limits>
#include <string>

#include "fairrank/errors.hpp"
#include "fairrank/io.hpp"
#include "fairrank/metrics.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace fairrank {
namespace {

using testing::code_of;

constexpr char kFourSingletons[] = R"({
  "k": 4,
  "desired": {"a1": 0.4, "a2": 0.4, "a3": 0.1, "a4": 0.1},
  "pools": {"a4": [0.4], "a3": [0.3], "a2": [0.2], "a1": [0.1]}
})";

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ParseTaskJson, OrderFollowsDesiredObject) {
  const TaskInput in = parse_task_json(kFourSingletons);
  EXPECT_EQ(in.k_max, 4u);
  EXPECT_EQ(in.labels, (std::vector<std::string>{"a1", "a2", "a3", "a4"}));
  EXPECT_EQ(in.desired, (std::vector<double>{0.4, 0.4, 0.1, 0.1}));
  EXPECT_EQ(in.pools, (std::vector<std::vector<double>>{{0.1}, {0.2}, {0.3}, {0.4}}));
}

TEST(ParseTaskJson, MalformedJsonReportsLine) {
  const std::string text = "{\n  \"k\": 4,\n  \"desired\": {\"a\": 1.0,,}\n}";
  EXPECT_EQ(code_of([&] { parse_task_json(text); }), ErrorCode::kParseError);
  EXPECT_NE(message_of([&] { parse_task_json(text); }).find("line 3"), std::string::npos);
}

TEST(ParseTaskJson, FieldDiagnostics) {
  const std::string bad_k = R"({"k": "four", "desired": {"a": 1}, "pools": {"a": [1]}})";
  EXPECT_NE(message_of([&] { parse_task_json(bad_k); }).find("'k'"), std::string::npos);
  const std::string bad_score = R"({"k": 1, "desired": {"a": 1}, "pools": {"a": [0.5, "x"]}})";
  EXPECT_EQ(code_of([&] { parse_task_json(bad_score); }), ErrorCode::kParseError);
  EXPECT_NE(message_of([&] { parse_task_json(bad_score); }).find("pools.a[1]"), std::string::npos);
  const std::string no_pools = R"({"k": 1, "desired": {"a": 1}})";
  EXPECT_EQ(code_of([&] { parse_task_json(no_pools); }), ErrorCode::kParseError);
  const std::string zero_k = R"({"k": 0, "desired": {"a": 1}, "pools": {"a": [1]}})";
  EXPECT_EQ(code_of([&] { parse_task_json(zero_k); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { parse_task_json("[1, 2]"); }), ErrorCode::kParseError);
}

TEST(ParseTaskJson, PoolLabelMismatch) {
  const std::string extra = R"({"k": 1, "desired": {"a": 1}, "pools": {"a": [1], "b": [1]}})";
  EXPECT_EQ(code_of([&] { parse_task_json(extra); }), ErrorCode::kUnknownAttribute);
  const std::string missing = R"({"k": 1, "desired": {"a": 0.5, "b": 0.5}, "pools": {"a": [1]}})";
  EXPECT_EQ(code_of([&] { parse_task_json(missing); }), ErrorCode::kMissingPool);
}

TEST(RankedJson, RoundTripKeepsFullPrecision) {
  const std::vector<std::string> labels = {"x", "y"};
  const RankedList list = {{1, 0.1 + 0.2}, {0, 1.0 / 3.0}, {1, 1e-17}};
  const std::string text = ranked_list_to_json(list, labels);
  EXPECT_NE(text.find("\"position\": 1"), std::string::npos);
  EXPECT_EQ(parse_ranked_json(text, labels), list);
  EXPECT_EQ(ranked_json_labels(text), (std::vector<std::string>{"y", "x"}));
}

TEST(RankedJson, Errors) {
  const std::vector<std::string> labels = {"a"};
  EXPECT_EQ(code_of([&] { parse_ranked_json(R"([{"attribute": "b", "score": 1}])", labels); }),
            ErrorCode::kUnknownAttribute);
  EXPECT_EQ(code_of([&] { parse_ranked_json(R"([{"attribute": "a"}])", labels); }),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of([&] {
              parse_ranked_json(R"([{"position": 2, "attribute": "a", "score": 1}])", labels);
            }),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of([&] { parse_ranked_json(R"({"a": 1})", labels); }), ErrorCode::kParseError);
  // Position is optional.
  EXPECT_EQ(parse_ranked_json(R"([{"attribute": "a", "score": 0.5}])", labels).size(), 1u);
}

TEST(ParseDesiredJson, BareMapOrTask) {
  const TaskInput bare = parse_desired_json(R"({"m": 0.3, "f": 0.7})");
  EXPECT_EQ(bare.labels, (std::vector<std::string>{"m", "f"}));
  EXPECT_EQ(bare.desired, (std::vector<double>{0.3, 0.7}));
  EXPECT_TRUE(bare.pools.empty());
  const TaskInput task = parse_desired_json(kFourSingletons);
  EXPECT_EQ(task.pools.size(), 4u);
  EXPECT_EQ(code_of([] { parse_desired_json(R"({"m": "high"})"); }), ErrorCode::kParseError);
}

TEST(MetricsReportJson, KeysAndNonFiniteValues) {
  MetricsReport r;
  r.skew_at_k = {0.0, std::numeric_limits<double>::quiet_NaN()};
  r.min_skew = 0.0;
  r.max_skew = 0.0;
  r.ndcg = 1.0;
  r.k = 2;
  const std::string text = metrics_report_to_json(r, {"a", "b"});
  for (const char* key : {"\"skew\"", "\"min_skew\"", "\"max_skew\"", "\"ndkl\"", "\"ndcg\"",
                          "\"infeasible_index\"", "\"infeasible_count\"", "\"k\"",
                          "\"feasible\": true", "\"b\": null"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(Files, ReadWriteAndErrors) {
  const auto path = (std::filesystem::temp_directory_path() / "fairrank_io_test.txt").string();
  write_file(path, "hello\n");
  EXPECT_EQ(read_file(path), "hello\n");
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { read_file(path); }), ErrorCode::kIoError);
  EXPECT_EQ(code_of([] { write_file("/nonexistent-dir/out.txt", "x"); }), ErrorCode::kIoError);
}

}  // namespace
}  // namespace fairrank
