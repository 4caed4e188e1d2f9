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

#ifndef ECS_SOLVER_H_
#define ECS_SOLVER_H_

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/miner.h"
#include "ecs/ratio.h"
#include "nlohmann/json.hpp"

namespace ecs {

enum class Objective {
  kMaxSinglyAssigned,      // instances in exactly one selected cluster
  kMinUnassigned,          // instances in no selected cluster
  kMaxClusters,
  kMaxExplanationLength,   // total number of selected patterns
  kMinExplanationLength,
  kMinAverageWcss,
};

absl::StatusOr<Objective> ParseObjective(const std::string& name);
std::string ObjectiveName(Objective objective);
bool IsMaximization(Objective objective);

struct SolverConfig {
  int k_min = 1;
  int k_max = std::numeric_limits<int>::max();
  int nb_clust_min = 0;
  int nb_clust_max = 1;
  // Bound on instances assigned to more than one cluster; unset = no bound.
  std::optional<int> nb_diff1_max;
  // Bound on instances assigned to no cluster; unset = no bound.
  std::optional<int> max_unassigned;
  // Clustering-wise discrimination: a selected pattern may cover (in the
  // coverC sense) at most eta * k of the k selected clusters.
  std::optional<Ratio> eta;
  bool eta_strict = false;  // use "< eta * k" instead of "<= eta * k"
  // Cluster-wise discrimination: a pattern selected for c forbids selecting
  // any other cluster c' it covers at more than phi * |c'|.
  std::optional<Ratio> phi;
  // Every pattern that is cluster-wise discriminative against the selection
  // must be part of the explanation.
  bool completeness = false;
  Objective objective = Objective::kMinAverageWcss;
  std::vector<int> must_select;                     // cluster ids
  std::vector<std::pair<int, int>> cannot_select;   // cluster id pairs
  std::optional<double> time_limit_seconds;
};

absl::Status ValidateSolverConfig(const SolverConfig& config);

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kTimeoutBestKnown,   // time limit hit, incumbent returned
  kTimeoutNoSolution,  // time limit hit before any solution was found
};

std::string SolveStatusName(SolveStatus status);

enum class ConstraintFamily {
  kClusterCount,
  kInstanceMembership,
  kAssignmentCount,
  kOverlap,
  kUnassignedBound,
  kNonEmptyExplanation,
  kClusteringWise,
  kClusterWise,
  kCompleteness,
  kMustSelect,
  kCannotSelect,
  kMalformed,
};
inline constexpr int kNumConstraintFamilies = 12;

std::string ConstraintFamilyName(ConstraintFamily family);

struct SearchStats {
  int64_t nodes = 0;
  int64_t bound_prunes = 0;
  // Propagation failures per constraint family.
  std::array<int64_t, kNumConstraintFamilies> failures{};
  double seconds = 0;

  // Family with the most propagation failures, if any failed.
  std::optional<ConstraintFamily> TightestFamily() const;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<bool> selected;                  // per cluster
  std::vector<std::vector<int>> explanations;  // pattern ids per cluster
  std::vector<int> assignment_counts;          // per instance
  double objective_value = 0;
  SearchStats stats;

  bool has_solution() const {
    return status == SolveStatus::kOptimal ||
           status == SolveStatus::kTimeoutBestKnown;
  }
  int num_selected() const;
};

// Exact branch-and-bound over cluster selection. Returns an optimal solution,
// kInfeasible, or the best incumbent on timeout. Among optimal solutions the
// lexicographically smallest selection vector is returned.
//
// Explanations are derived from the selection: a candidate pattern of a
// selected cluster is admissible when no other selected cluster is covered
// above phi and the clustering-wise bound holds. The explanation is every
// admissible pattern, except under kMinExplanationLength where it is the
// first admissible one.
absl::StatusOr<Solution> Solve(const IcsInstance& instance,
                               const SolverConfig& config);

// Exhaustive reference solver: every selection and, per selected cluster,
// every subset of its candidate patterns. Refuses instances with more than
// 20 clusters, more than 40 candidate patterns in total, or more than 12 on
// a single cluster.
absl::StatusOr<Solution> BruteForceSolve(const IcsInstance& instance,
                                         const SolverConfig& config);

struct Violation {
  ConstraintFamily family;
  std::string message;
  std::vector<int> indices;  // offending cluster / pattern / instance indices
};

// Re-evaluates every configured constraint against the raw instance data.
// Empty iff the solution is feasible.
std::vector<Violation> CheckSolution(const IcsInstance& instance,
                                     const SolverConfig& config,
                                     const Solution& solution);

// Objective of a selection and explanation under `objective`. The average
// WCSS of an empty selection is +infinity.
double EvaluateObjective(const IcsInstance& instance, Objective objective,
                         const std::vector<bool>& selected,
                         const std::vector<std::vector<int>>& explanations);

nlohmann::json SolutionToJson(const IcsInstance& instance,
                              const SolverConfig& config,
                              const Solution& solution);
absl::StatusOr<Solution> SolutionFromJson(const IcsInstance& instance,
                                          const nlohmann::json& json);

nlohmann::json SolverConfigToJson(const SolverConfig& config);

}  // namespace ecs

#endif  // ECS_SOLVER_H_
