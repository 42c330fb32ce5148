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
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fairrank/errors.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/rerank.hpp"
#include "fairrank/task.hpp"

namespace fairrank {

struct SimulationConfig {
  std::size_t attr_min = 2;
  std::size_t attr_max = 10;
  std::size_t num_distributions = 1000;
  std::size_t replications = 1;
  std::size_t pool_size = 100;
  std::size_t k_max = 100;
  std::vector<AlgorithmChoice> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  std::uint64_t seed = 42;
  std::size_t jobs = 1;
  bool fallback = false;
};

// Throws Error(kInvalidConfig).
void validate_config(const SimulationConfig& config);

// The generator behind every simulated draw. std::mt19937_64 has a fully
// specified output sequence, and uniform_open01 below avoids the
// implementation-defined std::uniform_real_distribution.
using Rng = std::mt19937_64;

// Uniform double strictly inside (0, 1), built from the top 53 bits.
double uniform_open01(Rng& rng);

enum class StreamPurpose : std::uint64_t { kDesired = 0, kPool = 1 };

// Seed for the stream of one (num_attr, distribution, replication) cell.
// Derivation is a fixed SplitMix64 chain, so streams never depend on the
// order in which tasks are executed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t num_attr,
                                 std::uint64_t distribution, std::uint64_t replication,
                                 StreamPurpose purpose);

// |A| i.i.d. uniform(0,1) draws, normalized.
DesiredDistribution gen_desired(std::size_t num_attr, Rng& rng);

// pool_size i.i.d. uniform(0,1) scores per attribute, sorted descending.
ScoredPool gen_pool(std::size_t num_attr, std::size_t pool_size, Rng& rng);

struct TaskOutcome {
  std::optional<MetricsReport> report;  // empty when the algorithm failed
  std::optional<ErrorCode> error;
  std::size_t fallback_events = 0;
};

// Ranks the task once per algorithm and measures at depth k_max. Failures
// are captured per algorithm instead of propagating.
std::map<AlgorithmChoice, TaskOutcome> run_task(const RankingTask& task,
                                                std::span<const AlgorithmChoice> algorithms,
                                                const RerankOptions& options = {});

// Streaming arithmetic mean with an order-sensitive but deterministic merge.
class RunningMean {
 public:
  void add(double x);
  void merge(const RunningMean& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
};

struct AggregateRow {
  std::size_t num_attr = 0;
  AlgorithmChoice algorithm = AlgorithmChoice::kVanilla;
  double mean_infeasible_index = 0.0;
  double mean_infeasible_count = 0.0;
  double mean_min_skew = 0.0;
  double mean_max_skew = 0.0;
  double mean_ndkl = 0.0;
  double mean_ndcg = 0.0;
  std::size_t task_count = 0;
  // Diagnostics, not part of the main CSV.
  std::size_t excluded_count = 0;
  std::size_t fallback_events = 0;
};

// Full grid over num_attr in [attr_min, attr_max]. Work is split into
// fixed-size chunks whose partial means are merged in chunk order, so the
// output is bit-identical for any `jobs` value.
std::vector<AggregateRow> run_grid(const SimulationConfig& config);

inline constexpr char kCsvHeader[] =
    "num_attr,algorithm,mean_infeasible_index,mean_infeasible_count,mean_min_skew,"
    "mean_max_skew,mean_ndkl,mean_ndcg,task_count";

// Rows sorted by (num_attr, algorithm enum order), floats with 6 decimals.
// Throws Error(kEmptyResult) for no rows.
std::string format_csv(std::span<const AggregateRow> rows);
void write_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path);

// Sidecar with excluded-task and fallback counts per row.
std::string format_diagnostics_csv(std::span<const AggregateRow> rows);
void write_diagnostics_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path);

}  // namespace fairrank
