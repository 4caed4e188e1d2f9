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

#ifndef ECS_MINER_H_
#define ECS_MINER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/bitset.h"
#include "ecs/dataset.h"
#include "ecs/pool.h"
#include "ecs/ratio.h"
#include "nlohmann/json.hpp"

namespace ecs {

struct Pattern {
  std::vector<int> items;  // sorted descriptor indices, non-empty
  int support = 0;         // support within the mined transactions

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

// Closed frequent itemsets by prefix-preserving closure extension (LCM)
// over bitset tid-lists. Returns every non-empty closed itemset with support
// >= min_support, sorted lexicographically by items.
std::vector<Pattern> MineClosed(
    const std::vector<std::vector<int>>& transactions, int num_items,
    int min_support);

// Number of members of `cluster` covered by `pattern`.
int CoverCount(const std::vector<int>& pattern, const Bitset& cluster,
               const Dataset& dataset);

// coverC: CoverCount >= theta * |cluster|, decided exactly.
// count >= theta * size, or count > theta * size when `strict`.
bool CoversCount(int64_t count, int64_t size, Ratio theta, bool strict);
// Smallest count (at least 1) for which CoversCount holds.
int64_t MinCoveringCount(int64_t size, Ratio theta, bool strict);

bool CoverC(const std::vector<int>& pattern, const Bitset& cluster,
            Ratio theta, const Dataset& dataset, bool strict = false);

// Keeps patterns covering strictly fewer than rho * |D \ C| instances
// outside the cluster.
std::vector<Pattern> DatasetWiseFilter(const std::vector<Pattern>& patterns,
                                       const Bitset& cluster,
                                       const Dataset& dataset, Ratio rho);

enum class PatternMode { kLcm, kSingle };

absl::StatusOr<PatternMode> ParsePatternMode(const std::string& name);
std::string PatternModeName(PatternMode mode);

struct MinerConfig {
  Ratio theta = Ratio::FromDouble(0.7);
  Ratio rho = Ratio::FromDouble(1.0);
  // Require strictly more than theta * |C| covered instances.
  bool coverage_strict = false;
  PatternMode mode = PatternMode::kLcm;
  std::optional<int> max_pattern_len;
};

absl::Status ValidateMinerConfig(const MinerConfig& config);

// Solver input for interpretable cluster selection.
struct IcsInstance {
  int num_instances = 0;
  Ratio theta;
  bool coverage_strict = false;
  Ratio rho;
  PatternMode mode = PatternMode::kLcm;
  std::vector<std::string> descriptor_names;
  std::vector<CandidateCluster> clusters;           // V clusters
  std::vector<std::vector<int>> patterns;           // P item lists
  std::vector<std::vector<int>> candidates;         // D_c as pattern ids
  std::vector<std::vector<int>> support;            // V x P, S_cp

  int num_clusters() const { return static_cast<int>(clusters.size()); }
  int num_patterns() const { return static_cast<int>(patterns.size()); }
  int cluster_size(int c) const { return clusters[c].size(); }
  std::string PatternName(int p) const;
};

// Structural checks: shapes, index ranges, S_cp <= |c|, and every cluster
// has at least one candidate pattern.
absl::Status ValidateInstance(const IcsInstance& instance);

// Mines, filters and assembles the solver instance. Clusters left without a
// candidate pattern are dropped; if none remain this is an error.
absl::StatusOr<IcsInstance> BuildInstance(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    const MinerConfig& config);

// BuildInstance restricted to single-descriptor patterns, closure not
// required.
absl::StatusOr<IcsInstance> SingleDescriptorMode(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    Ratio theta, Ratio rho, bool coverage_strict = false);

// S recomputed from the dataset for every cluster/pattern pair.
std::vector<std::vector<int>> RecomputeSupport(const IcsInstance& instance,
                                               const Dataset& dataset);

nlohmann::json InstanceToJson(const IcsInstance& instance);
absl::StatusOr<IcsInstance> InstanceFromJson(const nlohmann::json& json);

}  // namespace ecs

#endif  // ECS_MINER_H_
