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

#include "fairrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fairrank/errors.hpp"

namespace fairrank {

namespace {

void check_depth(std::size_t k, std::size_t length) {
  if (k < 1 || k > length) {
    throw Error(ErrorCode::kKOutOfRange,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(length) + "]");
  }
}

void check_attribute(AttributeId a, std::size_t num_attributes) {
  if (a >= num_attributes) {
    throw Error(ErrorCode::kUnknownAttribute,
                "attribute index " + std::to_string(a) + " has no desired proportion");
  }
}

std::vector<std::size_t> prefix_counts(std::span<const RankedItem> list,
                                       std::size_t num_attributes, std::size_t k) {
  std::vector<std::size_t> counts(num_attributes, 0);
  for (std::size_t i = 0; i < k; ++i) {
    check_attribute(list[i].attribute, num_attributes);
    ++counts[list[i].attribute];
  }
  return counts;
}

double position_discount(std::size_t position) {
  return 1.0 / std::log2(static_cast<double>(position) + 1.0);
}

double skew_from_count(std::size_t count, std::size_t k, double desired) {
  const double kd = static_cast<double>(k);
  const double proportion = std::max(static_cast<double>(count) / kd, kSkewEpsilonNumerator / kd);
  return std::log(proportion / desired);
}

// Extremes over positive-proportion attributes, given top-k counts.
std::pair<double, double> skew_extremes(const std::vector<std::size_t>& counts, std::size_t k,
                                        const DesiredDistribution& desired) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < desired.size(); ++a) {
    if (desired.proportions[a] <= 0.0) continue;
    const double s = skew_from_count(counts[a], k, desired.proportions[a]);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (lo > hi) throw Error(ErrorCode::kZeroDesiredProportion, "no attribute has positive proportion");
  return {lo, hi};
}

}  // namespace

std::vector<double> proportions_at_k(std::span<const RankedItem> list,
                                     std::size_t num_attributes, std::size_t k) {
  check_depth(k, list.size());
  const auto counts = prefix_counts(list, num_attributes, k);
  std::vector<double> out(num_attributes);
  for (std::size_t a = 0; a < num_attributes; ++a) {
    out[a] = static_cast<double>(counts[a]) / static_cast<double>(k);
  }
  return out;
}

double skew_at_k(std::span<const RankedItem> list, const DesiredDistribution& desired,
                 AttributeId attribute, std::size_t k) {
  check_attribute(attribute, desired.size());
  if (desired.proportions[attribute] <= 0.0) {
    throw Error(ErrorCode::kZeroDesiredProportion, "skew is undefined for a zero proportion");
  }
  check_depth(k, list.size());
  const auto counts = prefix_counts(list, desired.size(), k);
  return skew_from_count(counts[attribute], k, desired.proportions[attribute]);
}

double min_skew_at_k(std::span<const RankedItem> list, const DesiredDistribution& desired,
                     std::size_t k) {
  check_depth(k, list.size());
  return skew_extremes(prefix_counts(list, desired.size(), k), k, desired).first;
}

double max_skew_at_k(std::span<const RankedItem> list, const DesiredDistribution& desired,
                     std::size_t k) {
  check_depth(k, list.size());
  return skew_extremes(prefix_counts(list, desired.size(), k), k, desired).second;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kSupportMismatch, "distributions have different support sizes");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    if (q[j] <= 0.0) {
      throw Error(ErrorCode::kZeroDenominator,
                  "reference distribution is zero where the first is positive");
    }
    sum += p[j] * std::log(p[j] / q[j]);
  }
  // Gibbs' inequality; only rounding can push the sum below zero.
  return std::max(sum, 0.0);
}

double ndkl(std::span<const RankedItem> list, const DesiredDistribution& desired) {
  const std::size_t n_attr = desired.size();
  std::vector<std::size_t> counts(n_attr, 0);
  double weighted = 0.0;
  double normalizer = 0.0;
  for (std::size_t i = 1; i <= list.size(); ++i) {
    const AttributeId a = list[i - 1].attribute;
    check_attribute(a, n_attr);
    if (desired.proportions[a] <= 0.0) {
      throw Error(ErrorCode::kZeroDesiredProportion,
                  "ranked attribute " + std::to_string(a) + " has zero desired proportion");
    }
    ++counts[a];

    const double id = static_cast<double>(i);
    double kl = 0.0;
    for (std::size_t b = 0; b < n_attr; ++b) {
      if (counts[b] == 0) continue;
      const double prop = static_cast<double>(counts[b]) / id;
      kl += prop * std::log(prop / desired.proportions[b]);
    }
    const double discount = position_discount(i);
    weighted += discount * std::max(kl, 0.0);
    normalizer += discount;
  }
  return normalizer > 0.0 ? weighted / normalizer : 0.0;
}

double ndcg(std::span<const RankedItem> list, std::span<const double> ideal_scores) {
  if (ideal_scores.size() < list.size()) {
    throw Error(ErrorCode::kLengthMismatch, "ideal ranking is shorter than the list");
  }
  double dcg = 0.0;
  double ideal = 0.0;
  for (std::size_t i = 1; i <= list.size(); ++i) {
    const double discount = position_discount(i);
    dcg += list[i - 1].score * discount;
    ideal += ideal_scores[i - 1] * discount;
  }
  if (ideal == 0.0) return dcg == 0.0 ? 1.0 : 0.0;
  return dcg / ideal;
}

Infeasibility infeasibility(std::span<const RankedItem> list, const DesiredDistribution& desired) {
  const std::size_t n_attr = desired.size();
  std::vector<std::size_t> counts(n_attr, 0);
  Infeasibility out;
  for (std::size_t k = 1; k <= list.size(); ++k) {
    const AttributeId a = list[k - 1].attribute;
    check_attribute(a, n_attr);
    ++counts[a];
    bool violated = false;
    for (std::size_t b = 0; b < n_attr; ++b) {
      const long long required = snapped_floor(static_cast<double>(k) * desired.proportions[b]);
      if (static_cast<long long>(counts[b]) < required) {
        ++out.count;
        violated = true;
      }
    }
    if (violated) ++out.index;
  }
  return out;
}

std::size_t infeasible_index(std::span<const RankedItem> list, const DesiredDistribution& desired) {
  return infeasibility(list, desired).index;
}

std::size_t infeasible_count(std::span<const RankedItem> list, const DesiredDistribution& desired) {
  return infeasibility(list, desired).count;
}

MetricsReport measure(std::span<const RankedItem> list, const DesiredDistribution& desired,
                      std::span<const double> ideal_scores, std::optional<std::size_t> depth) {
  MetricsReport report;
  report.k = depth.value_or(std::min(kDefaultDepth, list.size()));
  check_depth(report.k, list.size());

  const auto counts = prefix_counts(list, desired.size(), report.k);
  report.skew_at_k.assign(desired.size(), 0.0);
  for (std::size_t a = 0; a < desired.size(); ++a) {
    if (desired.proportions[a] > 0.0) {
      report.skew_at_k[a] = skew_from_count(counts[a], report.k, desired.proportions[a]);
    } else {
      report.skew_at_k[a] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  std::tie(report.min_skew, report.max_skew) = skew_extremes(counts, report.k, desired);

  report.ndkl = ndkl(list, desired);
  report.ndcg = ndcg(list.first(report.k), ideal_scores);
  const auto inf = infeasibility(list, desired);
  report.infeasible_index = inf.index;
  report.infeasible_count = inf.count;
  return report;
}

}  // namespace fairrank
