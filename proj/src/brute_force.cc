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

#include <cstdint>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "ecs/solver.h"
#include "solver_internal.h"

namespace ecs {
namespace {

constexpr int kMaxClusters = 20;
constexpr int kMaxTotalPatterns = 40;
constexpr int kMaxPatternsPerCluster = 12;

// Checks every constraint that only depends on the cluster selection.
bool SelectionFeasible(const IcsInstance& instance, const SolverConfig& config,
                       const internal::ResolvedConfig& resolved,
                       const std::vector<bool>& selected) {
  const int v = instance.num_clusters();
  int k = 0;
  for (int c = 0; c < v; ++c) k += selected[c];
  if (k < config.k_min || k > config.k_max) return false;
  for (int c = 0; c < v; ++c) {
    if (resolved.must[c] && !selected[c]) return false;
    if (!selected[c]) continue;
    for (int other : resolved.cannot[c]) {
      if (selected[other]) return false;
    }
  }
  int over = 0;
  int unassigned = 0;
  for (int i = 0; i < instance.num_instances; ++i) {
    int n = 0;
    for (int c = 0; c < v; ++c) {
      n += selected[c] && instance.clusters[c].members.Test(i);
    }
    if (n < config.nb_clust_min || n > config.nb_clust_max) return false;
    over += n > 1;
    unassigned += n == 0;
  }
  if (config.nb_diff1_max && over > *config.nb_diff1_max) return false;
  if (config.max_unassigned && unassigned > *config.max_unassigned) {
    return false;
  }
  return true;
}

// True if pattern p may be selected for cluster c under the selection.
bool PatternAllowed(const IcsInstance& instance, const SolverConfig& config,
                    const std::vector<bool>& selected, int k, int c, int p) {
  if (config.phi) {
    for (int other = 0; other < instance.num_clusters(); ++other) {
      if (other != c && selected[other] &&
          internal::CoversAbovePhi(instance, *config.phi, other, p)) {
        return false;
      }
    }
  }
  if (config.eta) {
    int covered = 0;
    for (int other = 0; other < instance.num_clusters(); ++other) {
      covered += selected[other] && internal::CoversAtTheta(instance, other, p);
    }
    if (!internal::WithinEta(config, covered, k)) return false;
  }
  return true;
}

// True if p is exempt from completeness: some other selected cluster
// conflicts with it under phi.
bool Blocked(const IcsInstance& instance, const SolverConfig& config,
             const std::vector<bool>& selected, int c, int p) {
  if (!config.phi) return false;
  for (int other = 0; other < instance.num_clusters(); ++other) {
    if (other != c && selected[other] &&
        internal::CoversAbovePhi(instance, *config.phi, other, p)) {
      return true;
    }
  }
  return false;
}

}  // namespace

absl::StatusOr<Solution> BruteForceSolve(const IcsInstance& instance,
                                         const SolverConfig& config) {
  absl::StatusOr<internal::ResolvedConfig> resolved =
      internal::Resolve(instance, config);
  if (!resolved.ok()) return resolved.status();
  const int v = instance.num_clusters();
  int total = 0;
  for (int c = 0; c < v; ++c) {
    const int d = static_cast<int>(instance.candidates[c].size());
    total += d;
    if (d > kMaxPatternsPerCluster) {
      return absl::ResourceExhaustedError(absl::StrFormat(
          "brute force: cluster %d has %d candidate patterns (limit %d)",
          instance.clusters[c].id, d, kMaxPatternsPerCluster));
    }
  }
  if (v > kMaxClusters || total > kMaxTotalPatterns) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "brute force: instance too large (V=%d, patterns=%d; limits %d, %d)",
        v, total, kMaxClusters, kMaxTotalPatterns));
  }

  Solution best;
  best.status = SolveStatus::kInfeasible;
  bool found = false;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<bool> selected(v);
  for (uint32_t mask = 0; mask < (uint32_t{1} << v); ++mask) {
    // Cluster 0 is the most significant bit, so masks run in lex order.
    for (int c = 0; c < v; ++c) selected[c] = (mask >> (v - 1 - c)) & 1;
    if (!SelectionFeasible(instance, config, *resolved, selected)) continue;
    int k = 0;
    for (int c = 0; c < v; ++c) k += selected[c];
    if (config.objective == Objective::kMinAverageWcss && k == 0) continue;

    std::vector<std::vector<int>> explanations(v);
    bool ok = true;
    for (int c = 0; c < v && ok; ++c) {
      if (!selected[c]) continue;
      const std::vector<int>& d = instance.candidates[c];
      const int m = static_cast<int>(d.size());
      bool have = false;
      std::vector<int> pick;
      for (uint32_t sub = 1; sub < (uint32_t{1} << m); ++sub) {
        std::vector<int> y;
        bool valid = true;
        for (int j = 0; j < m && valid; ++j) {
          const bool in = (sub >> j) & 1;
          const int p = d[j];
          if (in) {
            valid = PatternAllowed(instance, config, selected, k, c, p);
            y.push_back(p);
          } else if (config.completeness) {
            valid = Blocked(instance, config, selected, c, p);
          }
        }
        if (!valid) continue;
        const bool better =
            !have ||
            (config.objective == Objective::kMinExplanationLength
                 ? y.size() < pick.size()
                 : y.size() > pick.size());
        if (better) {
          pick = y;
          have = true;
        }
      }
      if (!have) ok = false;
      explanations[c] = pick;
    }
    if (!ok) continue;

    double value =
        EvaluateObjective(instance, config.objective, selected, explanations);
    const double cost = IsMaximization(config.objective) ? -value : value;
    if (!found || cost < best_cost) {
      found = true;
      best_cost = cost;
      best.status = SolveStatus::kOptimal;
      best.selected = selected;
      best.explanations = explanations;
      best.objective_value = value;
    }
  }
  if (!found) {
    best.selected.assign(v, false);
    best.explanations.assign(v, {});
  }
  best.assignment_counts = internal::AssignmentCounts(instance, best.selected);
  return best;
}

}  // namespace ecs
