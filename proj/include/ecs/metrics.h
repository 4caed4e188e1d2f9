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

#ifndef ECS_METRICS_H_
#define ECS_METRICS_H_

#include <string>
#include <vector>

#include "ecs/bitset.h"
#include "ecs/dataset.h"
#include "ecs/miner.h"
#include "ecs/pool.h"
#include "ecs/solver.h"
#include "nlohmann/json.hpp"

namespace ecs {

// Pattern coverage rate: share of the cluster covered by the pattern.
double Pcr(const std::vector<int>& pattern, const Bitset& cluster,
           const Dataset& dataset);

// Explanation coverage: share of the cluster covered by at least one of the
// patterns.
double Ec(const std::vector<std::vector<int>>& explanation,
          const Bitset& cluster, const Dataset& dataset);

// Inverse pattern contrastivity of `pattern` for clustering[cluster_index]:
// mean over the other clusters of the uncovered fraction. 1.0 when the
// clustering has a single cluster.
double Ipc(const std::vector<int>& pattern, int cluster_index,
           const std::vector<Bitset>& clustering, const Dataset& dataset);

// Adjusted Rand index between two labelings of the same instances. Negative
// labels mark unassigned instances, each treated as its own singleton.
double Ari(const Labels& a, const Labels& b);

struct PatternReport {
  std::vector<int> items;
  std::string name;
  double pcr = 0;
  double ipc = 0;
};

struct ClusterReport {
  int cluster_id = 0;
  int size = 0;
  std::vector<PatternReport> patterns;
  double mean_pcr = 0;
  double ec = 0;
  double mean_ipc = 0;
};

struct ExplanationReport {
  std::vector<ClusterReport> clusters;
  int unassigned = 0;
  double mean_pcr = 0;
  double mean_ec = 0;
  double mean_ipc = 0;
};

// A clustering with one explanation (list of patterns) per cluster.
struct ExplainedClustering {
  std::vector<int> ids;
  std::vector<Bitset> clusters;
  std::vector<std::vector<std::vector<int>>> explanations;
};

ExplanationReport Report(const ExplainedClustering& clustering,
                         const Dataset& dataset);

// Report for the selected clusters of a solution.
ExplanationReport ReportSolution(const Solution& solution,
                                 const IcsInstance& instance,
                                 const Dataset& dataset);

ExplainedClustering SolutionClustering(const Solution& solution,
                                       const IcsInstance& instance);

// Explains each cluster of a plain clustering with every frequent pattern
// (closed patterns or single descriptors) covering at least theta of it,
// without any discrimination filter.
ExplainedClustering BaselineExplanations(const std::vector<Bitset>& clusters,
                                         const Dataset& dataset, Ratio theta,
                                         PatternMode mode,
                                         bool coverage_strict = false);

// Labels from a list of clusters; instances in no cluster get -1 and
// instances in several get the first one.
Labels ClustersToLabels(const std::vector<Bitset>& clusters,
                        int num_instances);

// Rounds to 2 decimals with halves going up, as printed in tables.
double RoundHalfUp2(double value);

nlohmann::json ReportToJson(const ExplanationReport& report);
// Aligned plain-text table, one row per cluster plus a mean row.
std::string ReportToTable(const ExplanationReport& report);

}  // namespace ecs

#endif  // ECS_METRICS_H_
