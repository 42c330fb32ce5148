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

#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fairrank/errors.hpp"
#include "fairrank/io.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/rerank.hpp"
#include "fairrank/simulate.hpp"
#include "fairrank/task.hpp"

namespace fairrank::cli {

namespace {

int exit_status(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInsufficientCandidates: return kExitInsufficientCandidates;
    case ErrorCode::kIoError: return kExitIoError;
    default: return kExitUsage;
  }
}

struct RerankArgs {
  std::string input;
  std::string algorithm;
  std::string output;
  bool fallback = false;
  bool sort_pools = false;
};

int cmd_rerank(const RerankArgs& args, std::ostream& out, std::ostream& err) {
  const AlgorithmChoice algorithm = parse_algorithm(args.algorithm);
  const RankingTask task = validate_task(parse_task_json(read_file(args.input)),
                                         ValidateOptions{.allow_unsorted = args.sort_pools});
  const RerankResult result = rank(task, algorithm, RerankOptions{.fallback = args.fallback});
  const std::string doc = ranked_list_to_json(result.list, task.labels());
  if (args.output.empty() || args.output == "-") {
    out << doc;
  } else {
    write_file(args.output, doc);
  }
  if (args.fallback) err << "fallback events: " << result.fallback_events << "\n";
  return kExitOk;
}

struct MeasureArgs {
  std::string ranked;
  std::string desired;
  std::optional<std::size_t> depth;
};

int cmd_measure(const MeasureArgs& args, std::ostream& out) {
  TaskInput reference = parse_desired_json(read_file(args.desired));
  check_distribution(reference.labels, reference.desired);

  const RankedList list = parse_ranked_json(read_file(args.ranked), reference.labels);
  if (list.empty()) throw Error(ErrorCode::kKOutOfRange, "ranked list is empty");

  // Ideal ranking: every candidate of a positive-proportion attribute when
  // pools are known, otherwise the ranked items themselves.
  std::vector<double> ideal;
  if (!reference.pools.empty()) {
    for (std::size_t a = 0; a < reference.pools.size(); ++a) {
      if (reference.desired[a] > 0.0) {
        ideal.insert(ideal.end(), reference.pools[a].begin(), reference.pools[a].end());
      }
    }
  } else {
    for (const auto& item : list) ideal.push_back(item.score);
  }
  std::sort(ideal.begin(), ideal.end(), std::greater<>());

  const DesiredDistribution desired{reference.desired};
  const MetricsReport report = measure(list, desired, ideal, args.depth);
  out << metrics_report_to_json(report, reference.labels);
  return kExitOk;
}

struct SimulateArgs {
  SimulationConfig config;
  std::vector<std::string> algorithms;
  std::string output;
};

int cmd_simulate(SimulateArgs args, std::ostream& out, std::ostream& err) {
  if (!args.algorithms.empty()) {
    args.config.algorithms.clear();
    for (const auto& name : args.algorithms) args.config.algorithms.push_back(parse_algorithm(name));
  }
  const auto rows = run_grid(args.config);
  write_csv(rows, args.output);
  const std::string sidecar = args.output + ".diagnostics.csv";
  write_diagnostics_csv(rows, sidecar);

  std::size_t num_attr = 0;
  std::ostringstream line;
  line << std::fixed << std::setprecision(4);
  auto flush = [&] {
    if (num_attr != 0) out << line.str() << "\n";
    line.str("");
  };
  for (const auto& row : rows) {
    if (row.num_attr != num_attr) {
      flush();
      num_attr = row.num_attr;
      line << "num_attr=" << num_attr << " tasks=" << row.task_count + row.excluded_count;
    }
    line << ' ' << algorithm_name(row.algorithm) << ":infeasible_index=" << row.mean_infeasible_index
         << ",min_skew=" << row.mean_min_skew << ",ndcg=" << row.mean_ndcg;
    if (row.excluded_count > 0) line << ",excluded=" << row.excluded_count;
  }
  flush();
  err << "wrote " << args.output << " and " << sidecar << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fairness-aware re-ranking toolkit", "fairrank"};
  app.require_subcommand(1);

  RerankArgs rerank_args;
  auto* rerank_cmd = app.add_subcommand("rerank", "Re-rank one task with a chosen algorithm");
  rerank_cmd->add_option("--input", rerank_args.input, "Task JSON file")->required();
  rerank_cmd
      ->add_option("--algorithm", rerank_args.algorithm,
                   "vanilla|detgreedy|detcons|detrelaxed|detconstsort")
      ->required();
  rerank_cmd->add_flag("--fallback", rerank_args.fallback,
                       "Substitute the next-best attribute when a pool runs out");
  rerank_cmd->add_flag("--sort-pools", rerank_args.sort_pools,
                       "Sort unsorted pools instead of rejecting them");
  rerank_cmd->add_option("--output", rerank_args.output, "Ranked JSON file (default: stdout)");

  MeasureArgs measure_args;
  auto* measure_cmd = app.add_subcommand("measure", "Compute bias and utility measures");
  measure_cmd->add_option("--ranked", measure_args.ranked, "Ranked JSON file")->required();
  measure_cmd
      ->add_option("--desired", measure_args.desired,
                   "Desired distribution JSON, or a task JSON whose pools define the ideal ranking")
      ->required();
  measure_cmd->add_option("--k", measure_args.depth, "Evaluation depth (default: min(100, |list|))")
      ->check(CLI::PositiveNumber);

  SimulateArgs sim_args;
  auto& cfg = sim_args.config;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the Monte-Carlo experiment grid");
  sim_cmd->add_option("--attr-min", cfg.attr_min, "Smallest number of attribute values")
      ->capture_default_str();
  sim_cmd->add_option("--attr-max", cfg.attr_max, "Largest number of attribute values")
      ->capture_default_str();
  sim_cmd->add_option("--num-distributions", cfg.num_distributions,
                      "Desired distributions per attribute count")
      ->capture_default_str();
  sim_cmd->add_option("--replications", cfg.replications, "Candidate pools per distribution")
      ->capture_default_str();
  sim_cmd->add_option("--pool-size", cfg.pool_size, "Candidates per attribute value")
      ->capture_default_str();
  sim_cmd->add_option("--k", cfg.k_max, "Length of each re-ranked list")->capture_default_str();
  sim_cmd->add_option("--algorithms", sim_args.algorithms, "Comma-separated algorithm names")
      ->delimiter(',');
  sim_cmd->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  sim_cmd->add_option("--output", sim_args.output, "Aggregate CSV file")->required();
  sim_cmd->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  sim_cmd->add_flag("--fallback", cfg.fallback, "Enable the pool-exhaustion fallback");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (rerank_cmd->parsed()) return cmd_rerank(rerank_args, out, err);
    if (measure_cmd->parsed()) return cmd_measure(measure_args, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e);
  }
  return kExitUsage;
}

}  // namespace fairrank::cli
