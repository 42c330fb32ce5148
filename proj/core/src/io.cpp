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

#include "fairrank/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fairrank/errors.hpp"
#include <nlohmann/json.hpp>

namespace fairrank {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + field + "': " + what);
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line number for the diagnostic.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw Error(ErrorCode::kParseError,
                "malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
}

double as_number(const Json& value, const std::string& field) {
  if (!value.is_number()) field_error(field, "expected a number");
  return value.get<double>();
}

std::pair<std::vector<std::string>, std::vector<double>> parse_desired_object(const Json& obj) {
  if (!obj.is_object()) field_error("desired", "expected an object of proportions");
  std::vector<std::string> labels;
  std::vector<double> desired;
  for (const auto& [label, value] : obj.items()) {
    labels.push_back(label);
    desired.push_back(as_number(value, "desired." + label));
  }
  return {labels, desired};
}

std::vector<std::vector<double>> parse_pools(const Json& obj,
                                             const std::vector<std::string>& labels) {
  if (!obj.is_object()) field_error("pools", "expected an object of score arrays");
  for (const auto& [label, value] : obj.items()) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
      throw Error(ErrorCode::kUnknownAttribute,
                  "field 'pools." + label + "': attribute has no desired proportion");
    }
  }
  std::vector<std::vector<double>> pools;
  for (const auto& label : labels) {
    const std::string field = "pools." + label;
    if (!obj.contains(label)) {
      throw Error(ErrorCode::kMissingPool, "field '" + field + "': missing");
    }
    const Json& arr = obj.at(label);
    if (!arr.is_array()) field_error(field, "expected an array of scores");
    std::vector<double> scores;
    scores.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      scores.push_back(as_number(arr[i], field + "[" + std::to_string(i) + "]"));
    }
    pools.push_back(std::move(scores));
  }
  return pools;
}

TaskInput parse_task_object(const Json& doc, bool require_k) {
  if (!doc.is_object()) field_error("<root>", "expected an object");
  TaskInput input;
  if (doc.contains("k")) {
    const Json& k = doc.at("k");
    if (!k.is_number_integer()) field_error("k", "expected an integer");
    if (k.get<long long>() < 1) field_error("k", "must be at least 1");
    input.k_max = k.get<std::size_t>();
  } else if (require_k) {
    field_error("k", "missing");
  }
  if (!doc.contains("desired")) field_error("desired", "missing");
  std::tie(input.labels, input.desired) = parse_desired_object(doc.at("desired"));
  if (doc.contains("pools")) {
    input.pools = parse_pools(doc.at("pools"), input.labels);
  } else if (require_k) {
    field_error("pools", "missing");
  }
  return input;
}

const Json& ranked_array(const Json& doc) {
  if (!doc.is_array()) field_error("<root>", "expected an array of ranked items");
  return doc;
}

std::string item_label(const Json& item, std::size_t i) {
  const std::string field = "[" + std::to_string(i) + "]";
  if (!item.is_object()) field_error(field, "expected an object");
  if (!item.contains("attribute") || !item.at("attribute").is_string()) {
    field_error(field + ".attribute", "expected a string");
  }
  return item.at("attribute").get<std::string>();
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

TaskInput parse_task_json(std::string_view text) {
  return parse_task_object(parse_document(text), /*require_k=*/true);
}

TaskInput parse_desired_json(std::string_view text) {
  const Json doc = parse_document(text);
  if (doc.is_object() && doc.contains("desired")) {
    return parse_task_object(doc, /*require_k=*/false);
  }
  TaskInput input;
  std::tie(input.labels, input.desired) = parse_desired_object(doc);
  return input;
}

std::string ranked_list_to_json(const RankedList& list, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back({{"position", i + 1},
                   {"attribute", labels.at(list[i].attribute)},
                   {"score", list[i].score}});
  }
  return out.dump(2) + "\n";
}

std::vector<std::string> ranked_json_labels(std::string_view text) {
  const Json doc = parse_document(text);
  ranked_array(doc);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto label = item_label(doc[i], i);
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
      labels.push_back(std::move(label));
    }
  }
  return labels;
}

RankedList parse_ranked_json(std::string_view text, const std::vector<std::string>& labels) {
  const Json doc = parse_document(text);
  ranked_array(doc);
  RankedList list;
  list.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Json& item = doc[i];
    const std::string field = "[" + std::to_string(i) + "]";
    const std::string label = item_label(item, i);
    if (item.contains("position")) {
      const Json& pos = item.at("position");
      if (!pos.is_number_integer() || pos.get<long long>() != static_cast<long long>(i + 1)) {
        field_error(field + ".position", "expected " + std::to_string(i + 1));
      }
    }
    if (!item.contains("score")) field_error(field + ".score", "missing");
    const double score = as_number(item.at("score"), field + ".score");

    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw Error(ErrorCode::kUnknownAttribute,
                  "field '" + field + ".attribute': '" + label + "' has no desired proportion");
    }
    list.push_back({static_cast<AttributeId>(it - labels.begin()), score});
  }
  return list;
}

std::string metrics_report_to_json(const MetricsReport& report,
                                   const std::vector<std::string>& labels) {
  Json skew = Json::object();
  for (std::size_t a = 0; a < report.skew_at_k.size(); ++a) {
    skew[labels.at(a)] = number_or_null(report.skew_at_k[a]);
  }
  Json out = {
      {"skew", skew},
      {"min_skew", number_or_null(report.min_skew)},
      {"max_skew", number_or_null(report.max_skew)},
      {"ndkl", report.ndkl},
      {"ndcg", report.ndcg},
      {"infeasible_index", report.infeasible_index},
      {"infeasible_count", report.infeasible_count},
      {"k", report.k},
      {"feasible", report.feasible()},
  };
  return out.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path + "'");
}

}  // namespace fairrank
