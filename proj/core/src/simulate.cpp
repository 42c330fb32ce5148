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

#include "fairrank/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

namespace fairrank {

namespace {

// Distributions per work item. Fixed so that the merge tree, and with it
// every rounded mean, does not depend on the number of workers.
constexpr std::size_t kChunkSize = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CellAccumulator {
  RunningMean infeasible_index;
  RunningMean infeasible_count;
  RunningMean min_skew;
  RunningMean max_skew;
  RunningMean ndkl;
  RunningMean ndcg;
  std::size_t excluded = 0;
  std::size_t fallback_events = 0;

  void add(const TaskOutcome& outcome) {
    fallback_events += outcome.fallback_events;
    if (!outcome.report) {
      ++excluded;
      return;
    }
    const auto& r = *outcome.report;
    infeasible_index.add(static_cast<double>(r.infeasible_index));
    infeasible_count.add(static_cast<double>(r.infeasible_count));
    min_skew.add(r.min_skew);
    max_skew.add(r.max_skew);
    ndkl.add(r.ndkl);
    ndcg.add(r.ndcg);
  }

  void merge(const CellAccumulator& o) {
    infeasible_index.merge(o.infeasible_index);
    infeasible_count.merge(o.infeasible_count);
    min_skew.merge(o.min_skew);
    max_skew.merge(o.max_skew);
    ndkl.merge(o.ndkl);
    ndcg.merge(o.ndcg);
    excluded += o.excluded;
    fallback_events += o.fallback_events;
  }
};

struct WorkItem {
  std::size_t num_attr;
  std::size_t first_distribution;
  std::size_t last_distribution;  // exclusive
};

std::vector<CellAccumulator> run_chunk(const SimulationConfig& config,
                                       const std::vector<AlgorithmChoice>& algorithms,
                                       const WorkItem& item) {
  std::vector<CellAccumulator> cells(algorithms.size());
  const RerankOptions options{.fallback = config.fallback};
  for (std::size_t d = item.first_distribution; d < item.last_distribution; ++d) {
    Rng desired_rng(derive_stream_seed(config.seed, item.num_attr, d, 0, StreamPurpose::kDesired));
    const DesiredDistribution desired = gen_desired(item.num_attr, desired_rng);
    for (std::size_t r = 0; r < config.replications; ++r) {
      Rng pool_rng(derive_stream_seed(config.seed, item.num_attr, d, r, StreamPurpose::kPool));
      TaskInput input;
      input.desired = desired.proportions;
      input.pools = gen_pool(item.num_attr, config.pool_size, pool_rng).scores;
      input.k_max = config.k_max;
      const RankingTask task = validate_task(std::move(input));
      const auto outcomes = run_task(task, algorithms, options);
      for (std::size_t i = 0; i < algorithms.size(); ++i) cells[i].add(outcomes.at(algorithms[i]));
    }
  }
  return cells;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::vector<AggregateRow> sorted_rows(std::span<const AggregateRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyResult, "no aggregate rows to write");
  std::vector<AggregateRow> out(rows.begin(), rows.end());
  std::stable_sort(out.begin(), out.end(), [](const AggregateRow& a, const AggregateRow& b) {
    if (a.num_attr != b.num_attr) return a.num_attr < b.num_attr;
    return static_cast<int>(a.algorithm) < static_cast<int>(b.algorithm);
  });
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path.string() + "'");
}

}  // namespace

void validate_config(const SimulationConfig& config) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (config.attr_min < 2) fail("attr_min must be at least 2");
  if (config.attr_max < config.attr_min) fail("attr_max must not be below attr_min");
  if (config.num_distributions < 1) fail("num_distributions must be positive");
  if (config.replications < 1) fail("replications must be positive");
  if (config.pool_size < 1) fail("pool_size must be positive");
  if (config.k_max < 1) fail("k must be positive");
  if (config.pool_size * config.attr_min < config.k_max) {
    fail("pool_size * attr_min must be at least k");
  }
  if (config.algorithms.empty()) fail("no algorithms selected");
  if (config.jobs < 1) fail("jobs must be positive");
}

double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t num_attr,
                                 std::uint64_t distribution, std::uint64_t replication,
                                 StreamPurpose purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ num_attr);
  h = splitmix64(h ^ distribution);
  h = splitmix64(h ^ replication);
  return splitmix64(h ^ static_cast<std::uint64_t>(purpose));
}

DesiredDistribution gen_desired(std::size_t num_attr, Rng& rng) {
  DesiredDistribution out;
  out.proportions.resize(num_attr);
  double sum = 0.0;
  for (auto& p : out.proportions) {
    p = uniform_open01(rng);
    sum += p;
  }
  for (auto& p : out.proportions) p /= sum;
  return out;
}

ScoredPool gen_pool(std::size_t num_attr, std::size_t pool_size, Rng& rng) {
  ScoredPool out;
  out.scores.resize(num_attr);
  for (auto& scores : out.scores) {
    scores.resize(pool_size);
    for (auto& s : scores) s = uniform_open01(rng);
    std::sort(scores.begin(), scores.end(), std::greater<>());
  }
  return out;
}

std::map<AlgorithmChoice, TaskOutcome> run_task(const RankingTask& task,
                                                std::span<const AlgorithmChoice> algorithms,
                                                const RerankOptions& options) {
  std::map<AlgorithmChoice, TaskOutcome> out;
  const std::vector<double> ideal = task.ideal_scores();
  for (AlgorithmChoice algorithm : algorithms) {
    TaskOutcome outcome;
    try {
      const RerankResult ranked = rank(task, algorithm, options);
      outcome.fallback_events = ranked.fallback_events;
      outcome.report = measure(ranked.list, task.desired(), ideal, task.k_max());
    } catch (const Error& e) {
      outcome.error = e.code();
    }
    out[algorithm] = std::move(outcome);
  }
  return out;
}

void RunningMean::add(double x) {
  ++count_;
  mean_ += (x - mean_) / static_cast<double>(count_);
}

void RunningMean::merge(const RunningMean& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const std::size_t total = count_ + other.count_;
  mean_ += (other.mean_ - mean_) * (static_cast<double>(other.count_) / static_cast<double>(total));
  count_ = total;
}

std::vector<AggregateRow> run_grid(const SimulationConfig& config) {
  validate_config(config);

  std::vector<AlgorithmChoice> algorithms;
  for (AlgorithmChoice a : config.algorithms) {
    if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end()) {
      algorithms.push_back(a);
    }
  }

  std::vector<WorkItem> items;
  for (std::size_t n = config.attr_min; n <= config.attr_max; ++n) {
    for (std::size_t d = 0; d < config.num_distributions; d += kChunkSize) {
      items.push_back({n, d, std::min(d + kChunkSize, config.num_distributions)});
    }
  }

  std::vector<std::vector<CellAccumulator>> partials(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        partials[i] = run_chunk(config, algorithms, items[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::min(config.jobs, std::max<std::size_t>(items.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<AggregateRow> rows;
  std::size_t item = 0;
  for (std::size_t n = config.attr_min; n <= config.attr_max; ++n) {
    std::vector<CellAccumulator> total(algorithms.size());
    for (; item < items.size() && items[item].num_attr == n; ++item) {
      for (std::size_t a = 0; a < algorithms.size(); ++a) total[a].merge(partials[item][a]);
    }
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      const auto& c = total[a];
      AggregateRow row;
      row.num_attr = n;
      row.algorithm = algorithms[a];
      row.mean_infeasible_index = c.infeasible_index.mean();
      row.mean_infeasible_count = c.infeasible_count.mean();
      row.mean_min_skew = c.min_skew.mean();
      row.mean_max_skew = c.max_skew.mean();
      row.mean_ndkl = c.ndkl.mean();
      row.mean_ndcg = c.ndcg.mean();
      row.task_count = c.ndcg.count();
      row.excluded_count = c.excluded;
      row.fallback_events = c.fallback_events;
      rows.push_back(row);
    }
  }
  return sorted_rows(rows);
}

std::string format_csv(std::span<const AggregateRow> rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : sorted_rows(rows)) {
    out += std::to_string(r.num_attr) + ',' + std::string(algorithm_name(r.algorithm)) + ',' +
           format_double(r.mean_infeasible_index) + ',' + format_double(r.mean_infeasible_count) +
           ',' + format_double(r.mean_min_skew) + ',' + format_double(r.mean_max_skew) + ',' +
           format_double(r.mean_ndkl) + ',' + format_double(r.mean_ndcg) + ',' +
           std::to_string(r.task_count) + '\n';
  }
  return out;
}

void write_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path) {
  write_text(path, format_csv(rows));
}

std::string format_diagnostics_csv(std::span<const AggregateRow> rows) {
  std::string out = "num_attr,algorithm,task_count,excluded_count,fallback_events\n";
  for (const auto& r : sorted_rows(rows)) {
    out += std::to_string(r.num_attr) + ',' + std::string(algorithm_name(r.algorithm)) + ',' +
           std::to_string(r.task_count) + ',' + std::to_string(r.excluded_count) + ',' +
           std::to_string(r.fallback_events) + '\n';
  }
  return out;
}

void write_diagnostics_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path) {
  write_text(path, format_diagnostics_csv(rows));
}

}  // namespace fairrank
