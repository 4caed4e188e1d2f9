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

#ifndef ECS_POOL_H_
#define ECS_POOL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/bitset.h"
#include "ecs/dataset.h"
#include "nlohmann/json.hpp"

namespace ecs {

struct Provenance {
  std::string algorithm;  // "kmeans", "hierarchical-single", ..., "imported"
  int k = 0;
  int run = 0;
  uint64_t seed = 0;
  std::string source;  // import file, if any

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CandidateCluster {
  int id = 0;
  Bitset members;  // over instances
  Provenance provenance;
  double wcss = 0;
  double diameter = 0;

  int size() const { return static_cast<int>(members.Count()); }
};

// Sum of squared Euclidean distances of members to their centroid.
double ComputeWcss(const Dataset& dataset, const Bitset& members);
// Largest pairwise Euclidean distance among members (0 for singletons).
double ComputeDiameter(const Dataset& dataset, const Bitset& members);

CandidateCluster MakeCluster(const Dataset& dataset, int id, Bitset members,
                             Provenance provenance);

// A partition as instance labels in [0, k).
using Labels = std::vector<int>;

// Lloyd's algorithm with k-means++ seeding. Stops when no assignment changes
// or after `max_iterations`. Empty clusters are re-seeded with the point
// farthest from its centroid. Requires 2 <= k < N.
absl::StatusOr<Labels> KMeans(const Dataset& dataset, int k, uint64_t seed,
                              int max_iterations = 300);

enum class Linkage { kSingle, kComplete, kAverage };

// Agglomerative clustering down to k clusters. Ties are broken by the
// smallest (i, j) pair of cluster slots. Requires 1 <= k <= N.
absl::StatusOr<Labels> Hierarchical(const Dataset& dataset, int k,
                                    Linkage linkage);

enum class PoolAlgorithm {
  kKMeans,
  kHierarchicalSingle,
  kHierarchicalComplete,
  kHierarchicalAverage,
};

absl::StatusOr<PoolAlgorithm> ParsePoolAlgorithm(const std::string& name);
std::string PoolAlgorithmName(PoolAlgorithm algorithm);

struct PoolConfig {
  std::vector<PoolAlgorithm> algorithms = {PoolAlgorithm::kKMeans};
  int k_lo = 2;
  int k_hi = 8;
  int runs_per_k = 1;
  uint64_t base_seed = 0;
};

absl::Status ValidatePoolConfig(const PoolConfig& config, int num_instances);

// Runs every (algorithm, k, run) job and flattens the resulting clusters in
// job order. Ids are assigned consecutively from `first_id`.
absl::StatusOr<std::vector<CandidateCluster>> GeneratePool(
    const Dataset& dataset, const PoolConfig& config, int first_id = 0);

// Reads one cluster per line of whitespace-separated instance ids. Blank
// lines and lines starting with '#' are skipped. Duplicate ids within a line
// are dropped and reported in `warnings`.
absl::StatusOr<std::vector<CandidateCluster>> ImportPartitions(
    const std::string& path, const Dataset& dataset, int first_id = 0,
    std::vector<std::string>* warnings = nullptr);

// Same as ImportPartitions but parses the text directly.
absl::StatusOr<std::vector<CandidateCluster>> ParsePartitions(
    const std::string& text, const std::string& source, const Dataset& dataset,
    int first_id = 0, std::vector<std::string>* warnings = nullptr);

// Merges clusters with identical members, keeping the first occurrence.
std::vector<CandidateCluster> Dedupe(std::vector<CandidateCluster> pool);

// Members of each cluster of a labelling.
std::vector<Bitset> LabelsToClusters(const Labels& labels);

// Pool interchange file. Members are 0-based instance indices.
nlohmann::json PoolToJson(const std::vector<CandidateCluster>& pool,
                          int num_instances);
absl::StatusOr<std::vector<CandidateCluster>> PoolFromJson(
    const nlohmann::json& json, int num_instances);

nlohmann::json ClusterToJson(const CandidateCluster& cluster);
absl::StatusOr<CandidateCluster> ClusterFromJson(const nlohmann::json& json,
                                                 int num_instances);

}  // namespace ecs

#endif  // ECS_POOL_H_
