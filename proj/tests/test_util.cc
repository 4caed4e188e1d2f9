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

#include "test_util.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "ecs/pool.h"

namespace ecs::testing {

absl::StatusOr<Dataset> MakeDataset(
    const std::vector<std::vector<int>>& descriptors,
    std::vector<std::vector<double>> features,
    std::vector<std::string> descriptor_names) {
  const int n = static_cast<int>(descriptors.size());
  const int m = n == 0 ? 0 : static_cast<int>(descriptors[0].size());
  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = absl::StrCat(i);
  if (features.empty()) features.assign(n, {0.0});
  std::vector<std::string> feature_names;
  for (size_t j = 0; j < (features.empty() ? 0 : features[0].size()); ++j) {
    feature_names.push_back(absl::StrCat("f", j));
  }
  if (descriptor_names.empty()) {
    for (int t = 0; t < m; ++t) descriptor_names.push_back(absl::StrCat("d", t));
  }
  std::vector<std::vector<bool>> rows(n, std::vector<bool>(m));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < m; ++t) rows[i][t] = descriptors[i][t] != 0;
  }
  return Dataset::Create(ids, feature_names, std::move(features),
                         descriptor_names, rows);
}

Bitset MakeBitset(int n, const std::vector<int>& members) {
  return Bitset::FromIndices(n, members);
}

IcsInstance RandomInstance(Rng& rng, const RandomInstanceOptions& options) {
  const int n = 4 + static_cast<int>(rng.Below(options.max_instances - 3));
  const int m = options.num_descriptors;
  // Descriptor rows; dataset validity is not needed here.
  std::vector<Bitset> rows(n, Bitset(m));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < m; ++t) {
      if (rng.Uniform() < 0.5) rows[i].Set(t);
    }
  }

  IcsInstance inst;
  inst.num_instances = n;
  inst.theta = Ratio::FromDouble(0.1 * (1 + rng.Below(8)));
  inst.coverage_strict = rng.Below(2) == 1;
  inst.rho = Ratio::FromDouble(1.0);
  for (int t = 0; t < m; ++t) inst.descriptor_names.push_back(absl::StrCat("d", t));

  const int v = 1 + static_cast<int>(rng.Below(options.max_clusters));
  std::vector<Bitset> clusters;
  // Pieces of random partitions make exact covers possible.
  while (static_cast<int>(clusters.size()) < v) {
    if (rng.Uniform() < 0.7) {
      const int k = 2 + static_cast<int>(rng.Below(3));
      std::vector<Bitset> parts(k, Bitset(n));
      for (int i = 0; i < n; ++i) parts[rng.Below(k)].Set(i);
      for (Bitset& b : parts) {
        if (b.Any() && static_cast<int>(clusters.size()) < v) {
          clusters.push_back(b);
        }
      }
    } else {
      Bitset b(n);
      for (int i = 0; i < n; ++i) {
        if (rng.Uniform() < 0.3) b.Set(i);
      }
      if (b.None()) b.Set(rng.Below(n));
      clusters.push_back(b);
    }
  }
  for (int c = 0; c < v; ++c) {
    CandidateCluster cl;
    cl.id = 10 + c;
    cl.members = clusters[c];
    // Small integer WCSS values create ties between selections.
    cl.wcss = rng.Uniform() < 0.5 ? static_cast<double>(rng.Below(20))
                                  : 100.0 * rng.Uniform();
    inst.clusters.push_back(cl);
  }

  const int universe = 3 + static_cast<int>(rng.Below(10));
  std::vector<std::vector<int>> patterns;
  while (static_cast<int>(patterns.size()) < universe) {
    const int len = 1 + static_cast<int>(rng.Below(2));
    std::vector<int> items;
    while (static_cast<int>(items.size()) < len) {
      const int t = static_cast<int>(rng.Below(m));
      if (std::find(items.begin(), items.end(), t) == items.end()) {
        items.push_back(t);
      }
    }
    std::sort(items.begin(), items.end());
    if (std::find(patterns.begin(), patterns.end(), items) == patterns.end()) {
      patterns.push_back(items);
    }
  }
  inst.patterns = patterns;
  // Keeps the total candidate count within the brute-force guard.
  constexpr int kMaxTotalCandidates = 40;
  int used = 0;
  for (int c = 0; c < v; ++c) {
    std::vector<int> ids(universe);
    std::iota(ids.begin(), ids.end(), 0);
    rng.Shuffle(ids.begin(), ids.end());
    const int room = kMaxTotalCandidates - used - (v - c - 1);
    const int d = std::min(
        1 + static_cast<int>(rng.Below(options.max_candidates)), room);
    ids.resize(std::min(d, universe));
    used += static_cast<int>(ids.size());
    std::sort(ids.begin(), ids.end());
    inst.candidates.push_back(ids);
  }
  inst.support.assign(v, std::vector<int>(universe, 0));
  for (int c = 0; c < v; ++c) {
    for (int p = 0; p < universe; ++p) {
      int s = 0;
      for (int i : inst.clusters[c].members.ToIndices()) {
        bool all = true;
        for (int t : patterns[p]) all = all && rows[i].Test(t);
        s += all;
      }
      inst.support[c][p] = s;
    }
  }
  return inst;
}

SolverConfig RandomConfig(Rng& rng, const IcsInstance& instance) {
  const int v = instance.num_clusters();
  SolverConfig config;
  config.objective = static_cast<Objective>(rng.Below(6));
  config.k_min = static_cast<int>(rng.Below(3));
  config.k_max = rng.Uniform() < 0.3 ? std::numeric_limits<int>::max()
                                     : config.k_min + static_cast<int>(rng.Below(4));
  config.nb_clust_min = rng.Uniform() < 0.4 ? 1 : 0;
  config.nb_clust_max = std::max(config.nb_clust_min,
                                 rng.Uniform() < 0.6 ? 1 : 2 + static_cast<int>(rng.Below(2)));
  if (rng.Uniform() < 0.3) config.nb_diff1_max = static_cast<int>(rng.Below(8));
  if (rng.Uniform() < 0.3) {
    config.max_unassigned =
        static_cast<int>(rng.Below(instance.num_instances + 1));
  }
  if (rng.Uniform() < 0.35) {
    config.eta = Ratio::FromDouble(0.25 * (1 + rng.Below(4)));
    config.eta_strict = rng.Below(2) == 1;
  }
  if (rng.Uniform() < 0.6) config.phi = Ratio::FromDouble(0.1 * rng.Below(7));
  config.completeness = config.objective != Objective::kMinExplanationLength &&
                        rng.Uniform() < 0.4;
  if (v > 0 && rng.Uniform() < 0.15) {
    config.must_select.push_back(instance.clusters[rng.Below(v)].id);
  }
  if (v > 1 && rng.Uniform() < 0.25) {
    const int a = static_cast<int>(rng.Below(v));
    int b = static_cast<int>(rng.Below(v - 1));
    if (b >= a) ++b;
    config.cannot_select.emplace_back(instance.clusters[a].id,
                                      instance.clusters[b].id);
  }
  return config;
}

std::string DescribeConfig(const SolverConfig& c) {
  auto opt = [](const auto& o) {
    return o ? absl::StrCat(*o) : std::string("-");
  };
  return absl::StrCat(
      ObjectiveName(c.objective), " k=[", c.k_min, ",", c.k_max, "] nb=[",
      c.nb_clust_min, ",", c.nb_clust_max, "] diff1=", opt(c.nb_diff1_max),
      " unassigned=", opt(c.max_unassigned),
      " eta=", c.eta ? c.eta->ToString() : "-", c.eta_strict ? "(strict)" : "",
      " phi=", c.phi ? c.phi->ToString() : "-",
      " complete=", c.completeness, " must=", c.must_select.size(),
      " cannot=", c.cannot_select.size());
}

std::string DataPath(const std::string& relative) {
  return std::string(ECS_SOURCE_DIR) + "/data/" + relative;
}

}  // namespace ecs::testing
