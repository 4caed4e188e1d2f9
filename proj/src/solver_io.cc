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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "ecs/solver.h"
#include "nlohmann/json.hpp"

namespace ecs {

using nlohmann::json;

json SolverConfigToJson(const SolverConfig& config) {
  json j;
  j["k_min"] = config.k_min;
  j["k_max"] = config.k_max;
  j["nb_clust_min"] = config.nb_clust_min;
  j["nb_clust_max"] = config.nb_clust_max;
  j["nb_diff1_max"] =
      config.nb_diff1_max ? json(*config.nb_diff1_max) : json(nullptr);
  j["max_unassigned"] =
      config.max_unassigned ? json(*config.max_unassigned) : json(nullptr);
  j["eta"] = config.eta ? json(config.eta->ToDouble()) : json(nullptr);
  j["eta_strict"] = config.eta_strict;
  j["phi"] = config.phi ? json(config.phi->ToDouble()) : json(nullptr);
  j["completeness"] = config.completeness;
  j["objective"] = ObjectiveName(config.objective);
  j["must_select"] = config.must_select;
  json pairs = json::array();
  for (auto [a, b] : config.cannot_select) pairs.push_back({a, b});
  j["cannot_select"] = pairs;
  return j;
}

json SolutionToJson(const IcsInstance& instance, const SolverConfig& config,
                    const Solution& solution) {
  json j;
  j["format"] = "ecs-solution/1";
  j["status"] = SolveStatusName(solution.status);
  j["config"] = SolverConfigToJson(config);
  json clusters = json::array();
  std::vector<int> selected_ids;
  if (solution.has_solution()) {
    j["objective_value"] = solution.objective_value;
    for (int c = 0; c < instance.num_clusters(); ++c) {
      if (!solution.selected[c]) continue;
      selected_ids.push_back(instance.clusters[c].id);
      json patterns = json::array();
      for (int p : solution.explanations[c]) {
        patterns.push_back({{"index", p}, {"name", instance.PatternName(p)}});
      }
      clusters.push_back({{"id", instance.clusters[c].id},
                          {"index", c},
                          {"size", instance.cluster_size(c)},
                          {"wcss", instance.clusters[c].wcss},
                          {"patterns", patterns}});
    }
    j["assignment_counts"] = solution.assignment_counts;
  } else {
    j["objective_value"] = nullptr;
    j["assignment_counts"] = json::array();
  }
  j["selected"] = selected_ids;
  j["clusters"] = clusters;
  // Wall-clock time is left out so output files are reproducible.
  json failures = json::object();
  for (int f = 0; f < kNumConstraintFamilies; ++f) {
    if (solution.stats.failures[f] == 0) continue;
    failures[ConstraintFamilyName(static_cast<ConstraintFamily>(f))] =
        solution.stats.failures[f];
  }
  j["search"] = {{"nodes", solution.stats.nodes},
                 {"bound_prunes", solution.stats.bound_prunes},
                 {"failures", failures}};
  if (auto tightest = solution.stats.TightestFamily()) {
    j["search"]["tightest_family"] = ConstraintFamilyName(*tightest);
  }
  return j;
}

absl::StatusOr<Solution> SolutionFromJson(const IcsInstance& instance,
                                          const json& j) {
  try {
    if (j.at("format").get<std::string>() != "ecs-solution/1") {
      return absl::InvalidArgumentError("solution: unsupported format");
    }
    Solution s;
    const std::string status = j.at("status").get<std::string>();
    bool known = false;
    for (SolveStatus st :
         {SolveStatus::kOptimal, SolveStatus::kInfeasible,
          SolveStatus::kTimeoutBestKnown, SolveStatus::kTimeoutNoSolution}) {
      if (SolveStatusName(st) == status) {
        s.status = st;
        known = true;
      }
    }
    if (!known) {
      return absl::InvalidArgumentError(
          absl::StrCat("solution: unknown status '", status, "'"));
    }
    const int v = instance.num_clusters();
    s.selected.assign(v, false);
    s.explanations.assign(v, {});
    s.assignment_counts.assign(instance.num_instances, 0);
    if (!s.has_solution()) return s;
    std::map<int, int> index_of;
    for (int c = 0; c < v; ++c) index_of[instance.clusters[c].id] = c;
    for (const json& cj : j.at("clusters")) {
      const int id = cj.at("id").get<int>();
      auto it = index_of.find(id);
      if (it == index_of.end()) {
        return absl::NotFoundError(
            absl::StrCat("solution: cluster id ", id, " not in instance"));
      }
      s.selected[it->second] = true;
      for (const json& pj : cj.at("patterns")) {
        const int p = pj.at("index").get<int>();
        if (p < 0 || p >= instance.num_patterns()) {
          return absl::OutOfRangeError(
              absl::StrCat("solution: pattern index ", p, " out of range"));
        }
        s.explanations[it->second].push_back(p);
      }
    }
    s.assignment_counts = j.at("assignment_counts").get<std::vector<int>>();
    if (static_cast<int>(s.assignment_counts.size()) !=
        instance.num_instances) {
      return absl::InvalidArgumentError(
          "solution: assignment_counts length does not match the instance");
    }
    s.objective_value = j.at("objective_value").get<double>();
    return s;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("solution: malformed JSON: ", e.what()));
  }
}

}  // namespace ecs
