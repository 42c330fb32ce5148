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

#include <string>
#include <string_view>

#include "fairrank/metrics.hpp"
#include "fairrank/task.hpp"

namespace fairrank {

// Task document: {"k": int, "desired": {"<attr>": float, ...},
//                 "pools": {"<attr>": [float, ...], ...}}
// Attribute order (and hence tie-breaking) follows the "desired" object.
// Throws Error(kParseError) with a field path on malformed input.
TaskInput parse_task_json(std::string_view text);

// Ranked document: [{"position": 1, "attribute": "a4", "score": 0.4}, ...]
std::string ranked_list_to_json(const RankedList& list, const std::vector<std::string>& labels);

// Parses a ranked document against known labels. Unknown labels raise
// Error(kUnknownAttribute).
RankedList parse_ranked_json(std::string_view text, const std::vector<std::string>& labels);

// Ranked document labels in order of first appearance.
std::vector<std::string> ranked_json_labels(std::string_view text);

// Either a bare {"<attr>": float} object or a full task document. Pools
// are filled only in the latter case.
TaskInput parse_desired_json(std::string_view text);

std::string metrics_report_to_json(const MetricsReport& report,
                                   const std::vector<std::string>& labels);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace fairrank
