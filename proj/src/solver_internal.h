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

#ifndef ECS_SOLVER_INTERNAL_H_
#define ECS_SOLVER_INTERNAL_H_

#include <vector>

#include "absl/status/statusor.h"
#include "ecs/miner.h"
#include "ecs/solver.h"

namespace ecs::internal {

// Solver config with cluster ids mapped to instance indices and the
// selection-count range clipped to [0, V].
struct ResolvedConfig {
  int k_min = 0;
  int k_max = 0;
  std::vector<bool> must;                 // per cluster index
  std::vector<std::vector<int>> cannot;   // partner indices per cluster
};

absl::StatusOr<ResolvedConfig> Resolve(const IcsInstance& instance,
                                       const SolverConfig& config);

// S_{c'p} > phi * |c'|
inline bool CoversAbovePhi(const IcsInstance& instance, Ratio phi, int cluster,
                           int pattern) {
  return Ratio::CountAbove(instance.support[cluster][pattern], phi,
                           instance.cluster_size(cluster));
}

// coverC on the support matrix, with the instance's coverage rule.
inline bool CoversAtTheta(const IcsInstance& instance, int cluster,
                          int pattern) {
  return CoversCount(instance.support[cluster][pattern],
                     instance.cluster_size(cluster), instance.theta,
                     instance.coverage_strict);
}

// Clustering-wise bound for `covered` covered clusters among `k` selected.
inline bool WithinEta(const SolverConfig& config, int covered, int k) {
  if (!config.eta) return true;
  return config.eta_strict ? Ratio::CountBelow(covered, *config.eta, k)
                           : Ratio::CountAtMost(covered, *config.eta, k);
}

std::vector<int> AssignmentCounts(const IcsInstance& instance,
                                  const std::vector<bool>& selected);

}  // namespace ecs::internal

#endif  // ECS_SOLVER_INTERNAL_H_
