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

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "ecs/solver.h"
#include "solver_internal.h"

namespace ecs {

std::vector<Violation> CheckSolution(const IcsInstance& instance,
                                     const SolverConfig& config,
                                     const Solution& solution) {
  std::vector<Violation> out;
  auto add = [&](ConstraintFamily family, std::string message,
                 std::vector<int> indices) {
    out.push_back({family, std::move(message), std::move(indices)});
  };
  const int v = instance.num_clusters();
  const int n = instance.num_instances;
  if (static_cast<int>(solution.selected.size()) != v ||
      static_cast<int>(solution.explanations.size()) != v ||
      static_cast<int>(solution.assignment_counts.size()) != n) {
    add(ConstraintFamily::kMalformed, "vector sizes do not match the instance",
        {});
    return out;
  }
  if (!solution.has_solution()) return out;

  int k = 0;
  for (int c = 0; c < v; ++c) k += solution.selected[c];
  if (k < config.k_min || k > config.k_max) {
    add(ConstraintFamily::kClusterCount,
        absl::StrFormat("%d clusters selected, allowed [%d, %d]", k,
                        config.k_min, config.k_max),
        {});
  }

  int over = 0;
  int unassigned = 0;
  for (int i = 0; i < n; ++i) {
    int count = 0;
    for (int c = 0; c < v; ++c) {
      count += solution.selected[c] && instance.clusters[c].members.Test(i);
    }
    if (count != solution.assignment_counts[i]) {
      add(ConstraintFamily::kAssignmentCount,
          absl::StrFormat("instance %d: stored count %d, actual %d", i,
                          solution.assignment_counts[i], count),
          {i});
    }
    if (count < config.nb_clust_min || count > config.nb_clust_max) {
      add(ConstraintFamily::kInstanceMembership,
          absl::StrFormat("instance %d belongs to %d selected clusters, "
                          "allowed [%d, %d]",
                          i, count, config.nb_clust_min, config.nb_clust_max),
          {i});
    }
    over += count > 1;
    unassigned += count == 0;
  }
  if (config.nb_diff1_max && over > *config.nb_diff1_max) {
    add(ConstraintFamily::kOverlap,
        absl::StrFormat("%d instances in several clusters, bound %d", over,
                        *config.nb_diff1_max),
        {});
  }
  if (config.max_unassigned && unassigned > *config.max_unassigned) {
    add(ConstraintFamily::kUnassignedBound,
        absl::StrFormat("%d unassigned instances, bound %d", unassigned,
                        *config.max_unassigned),
        {});
  }

  for (int c = 0; c < v; ++c) {
    const std::vector<int>& y = solution.explanations[c];
    if (!solution.selected[c]) {
      if (!y.empty()) {
        add(ConstraintFamily::kMalformed,
            absl::StrFormat("unselected cluster %d carries patterns", c), {c});
      }
      continue;
    }
    if (y.empty()) {
      add(ConstraintFamily::kNonEmptyExplanation,
          absl::StrFormat("selected cluster %d has an empty explanation", c),
          {c});
    }
    const std::set<int> chosen(y.begin(), y.end());
    const std::set<int> allowed(instance.candidates[c].begin(),
                                instance.candidates[c].end());
    for (int p : y) {
      if (!allowed.count(p)) {
        add(ConstraintFamily::kMalformed,
            absl::StrFormat("pattern %d is not a candidate of cluster %d", p,
                            c),
            {c, p});
        continue;
      }
      if (config.eta) {
        int covered = 0;
        for (int o = 0; o < v; ++o) {
          covered += solution.selected[o] &&
                     CoversCount(instance.support[o][p],
                                 instance.cluster_size(o), instance.theta,
                                 instance.coverage_strict);
        }
        if (!internal::WithinEta(config, covered, k)) {
          add(ConstraintFamily::kClusteringWise,
              absl::StrFormat("pattern %d of cluster %d covers %d of %d "
                              "selected clusters (eta %s)",
                              p, c, covered, k, config.eta->ToString()),
              {c, p});
        }
      }
      if (config.phi) {
        for (int o = 0; o < v; ++o) {
          if (o == c || !solution.selected[o]) continue;
          if (Ratio::CountAbove(instance.support[o][p], *config.phi,
                                instance.cluster_size(o))) {
            add(ConstraintFamily::kClusterWise,
                absl::StrFormat("pattern %d of cluster %d covers %d/%d of "
                                "selected cluster %d (phi %s)",
                                p, c, instance.support[o][p],
                                instance.cluster_size(o), o,
                                config.phi->ToString()),
                {c, p, o});
          }
        }
      }
    }
    if (config.completeness) {
      for (int p : instance.candidates[c]) {
        if (chosen.count(p)) continue;
        bool blocked = false;
        for (int o = 0; o < v && config.phi && !blocked; ++o) {
          blocked = o != c && solution.selected[o] &&
                    Ratio::CountAbove(instance.support[o][p], *config.phi,
                                      instance.cluster_size(o));
        }
        if (!blocked) {
          add(ConstraintFamily::kCompleteness,
              absl::StrFormat("pattern %d is admissible for cluster %d but "
                              "not selected",
                              p, c),
              {c, p});
        }
      }
    }
  }

  for (int id : config.must_select) {
    bool ok = false;
    for (int c = 0; c < v; ++c) {
      ok |= instance.clusters[c].id == id && solution.selected[c];
    }
    if (!ok) {
      add(ConstraintFamily::kMustSelect,
          absl::StrFormat("cluster id %d must be selected", id), {});
    }
  }
  for (auto [a, b] : config.cannot_select) {
    int hits = 0;
    for (int c = 0; c < v; ++c) {
      const int id = instance.clusters[c].id;
      hits += (id == a || id == b) && solution.selected[c];
    }
    if (hits == 2) {
      add(ConstraintFamily::kCannotSelect,
          absl::StrFormat("cluster ids %d and %d are both selected", a, b),
          {});
    }
  }

  const double value = EvaluateObjective(instance, config.objective,
                                         solution.selected,
                                         solution.explanations);
  if (!(std::abs(value - solution.objective_value) <=
        1e-9 * std::max(1.0, std::abs(value)))) {
    add(ConstraintFamily::kMalformed,
        absl::StrFormat("objective value %.17g, recomputed %.17g",
                        solution.objective_value, value),
        {});
  }
  return out;
}

}  // namespace ecs
