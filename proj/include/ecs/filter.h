// Copyright 2026 The ECS Authors
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

#ifndef ECS_FILTER_H_
#define ECS_FILTER_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/dataset.h"
#include "ecs/pool.h"

namespace ecs {

enum class TopMetric { kWcss, kDiameter };

struct FilterConfig {
  std::optional<int> size_min;
  std::optional<int> size_max;
  std::optional<double> diameter_max;
  // Instance index pairs.
  std::vector<std::pair<int, int>> must_link;
  std::vector<std::pair<int, int>> cannot_link;
  // Percentage in (0, 100].
  std::optional<double> top_iota;
  TopMetric top_metric = TopMetric::kWcss;
};

absl::Status ValidateFilterConfig(const FilterConfig& config,
                                  int num_instances);

struct Removal {
  int cluster_id;
  std::string reason;
};

// Drops clusters violating size or diameter bounds, and clusters that
// separate a must-link pair (contain exactly one of a, b) or join a
// cannot-link pair (contain both). Clusters containing neither endpoint of a
// must-link pair are kept.
std::vector<CandidateCluster> FilterIndividual(
    const std::vector<CandidateCluster>& pool, const FilterConfig& config,
    std::vector<Removal>* removals = nullptr);

// Keeps the ceil(iota% * |pool|) clusters with the smallest metric; ties go
// to the smaller id. Output keeps the input order.
std::vector<CandidateCluster> FilterTop(
    const std::vector<CandidateCluster>& pool, const FilterConfig& config);

// FilterIndividual then FilterTop. An empty result is an error.
absl::StatusOr<std::vector<CandidateCluster>> ApplyFilters(
    const std::vector<CandidateCluster>& pool, const FilterConfig& config,
    std::vector<Removal>* removals = nullptr);

// Parses lines "ML a b" / "CL a b" with instance ids into `config`.
absl::Status ParseLinkConstraints(const std::string& text,
                                  const std::string& source,
                                  const Dataset& dataset,
                                  FilterConfig* config);
absl::Status LoadLinkConstraints(const std::string& path,
                                 const Dataset& dataset, FilterConfig* config);

}  // namespace ecs

#endif  // ECS_FILTER_H_
