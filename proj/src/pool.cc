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

#include "ecs/pool.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "ecs/rng.h"

namespace ecs {
namespace {

double SquaredDistance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double s = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

// Relabels so that labels appear in order of first occurrence.
Labels Canonicalize(const Labels& labels) {
  std::vector<int> remap;
  int next = 0;
  Labels out(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l >= static_cast<int>(remap.size())) remap.resize(l + 1, -1);
    if (remap[l] < 0) remap[l] = next++;
    out[i] = remap[l];
  }
  return out;
}

}  // namespace

double ComputeWcss(const Dataset& dataset, const Bitset& members) {
  const std::vector<int> idx = members.ToIndices();
  if (idx.empty()) return 0;
  const int nf = dataset.num_features();
  std::vector<double> centroid(nf, 0.0);
  for (int i : idx) {
    for (int j = 0; j < nf; ++j) centroid[j] += dataset.feature(i, j);
  }
  for (double& c : centroid) c /= static_cast<double>(idx.size());
  double s = 0;
  for (int i : idx) s += SquaredDistance(dataset.features()[i], centroid);
  return s;
}

double ComputeDiameter(const Dataset& dataset, const Bitset& members) {
  const std::vector<int> idx = members.ToIndices();
  double best = 0;
  for (size_t a = 0; a < idx.size(); ++a) {
    for (size_t b = a + 1; b < idx.size(); ++b) {
      best = std::max(best, SquaredDistance(dataset.features()[idx[a]],
                                            dataset.features()[idx[b]]));
    }
  }
  return std::sqrt(best);
}

CandidateCluster MakeCluster(const Dataset& dataset, int id, Bitset members,
                             Provenance provenance) {
  CandidateCluster c;
  c.id = id;
  c.wcss = ComputeWcss(dataset, members);
  c.diameter = ComputeDiameter(dataset, members);
  c.members = std::move(members);
  c.provenance = std::move(provenance);
  return c;
}

absl::StatusOr<Labels> KMeans(const Dataset& dataset, int k, uint64_t seed,
                              int max_iterations) {
  const int n = dataset.num_instances();
  if (k < 2 || k >= n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k-means needs 2 <= k < N, got k=%d, N=%d", k, n));
  }
  const auto& x = dataset.features();
  const int nf = dataset.num_features();
  Rng rng(seed);

  // k-means++ seeding.
  std::vector<std::vector<double>> centres;
  std::vector<bool> chosen(n, false);
  int first = static_cast<int>(rng.Below(n));
  centres.push_back(x[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (int i = 0; i < n; ++i) d2[i] = SquaredDistance(x[i], centres[0]);
  while (static_cast<int>(centres.size()) < k) {
    double total = 0;
    for (int i = 0; i < n; ++i) total += d2[i];
    int pick = -1;
    if (total > 0) {
      double r = rng.Uniform() * total;
      for (int i = 0; i < n; ++i) {
        if (d2[i] <= 0) continue;
        pick = i;
        r -= d2[i];
        if (r < 0) break;
      }
    } else {
      for (int i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    chosen[pick] = true;
    centres.push_back(x[pick]);
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], SquaredDistance(x[i], centres.back()));
    }
  }

  Labels labels(n, -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = SquaredDistance(x[i], centres[0]);
      for (int c = 1; c < k; ++c) {
        const double d = SquaredDistance(x[i], centres[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    // Re-seed empty clusters with the point farthest from its centroid,
    // taken from a cluster that can spare it.
    std::vector<int> sizes(k, 0);
    for (int l : labels) ++sizes[l];
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      int far = -1;
      double far_d = -1;
      for (int i = 0; i < n; ++i) {
        if (sizes[labels[i]] <= 1) continue;
        const double d = SquaredDistance(x[i], centres[labels[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[labels[far]];
      labels[far] = c;
      sizes[c] = 1;
      centres[c] = x[far];
      changed = true;
    }
    if (!changed) break;
    for (auto& c : centres) std::fill(c.begin(), c.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < nf; ++j) centres[labels[i]][j] += x[i][j];
    }
    for (int c = 0; c < k; ++c) {
      for (int j = 0; j < nf; ++j) centres[c][j] /= sizes[c];
    }
  }
  return Canonicalize(labels);
}

absl::StatusOr<Labels> Hierarchical(const Dataset& dataset, int k,
                                    Linkage linkage) {
  const int n = dataset.num_instances();
  if (k < 1 || k > n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "hierarchical clustering needs 1 <= k <= N, got k=%d, N=%d", k, n));
  }
  const auto& x = dataset.features();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = std::sqrt(SquaredDistance(x[i], x[j]));
    }
  }
  std::vector<int> slot_of(n);
  for (int i = 0; i < n; ++i) slot_of[i] = i;
  std::vector<int> size(n, 1);
  std::vector<bool> active(n, true);
  for (int remaining = n; remaining > k; --remaining) {
    int bi = -1, bj = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (active[j] && dist[i][j] < bd) {
          bd = dist[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    for (int m = 0; m < n; ++m) {
      if (!active[m] || m == bi || m == bj) continue;
      double d = 0;
      switch (linkage) {
        case Linkage::kSingle:
          d = std::min(dist[bi][m], dist[bj][m]);
          break;
        case Linkage::kComplete:
          d = std::max(dist[bi][m], dist[bj][m]);
          break;
        case Linkage::kAverage:
          d = (size[bi] * dist[bi][m] + size[bj] * dist[bj][m]) /
              (size[bi] + size[bj]);
          break;
      }
      dist[bi][m] = dist[m][bi] = d;
    }
    size[bi] += size[bj];
    active[bj] = false;
    for (int i = 0; i < n; ++i) {
      if (slot_of[i] == bj) slot_of[i] = bi;
    }
  }
  return Canonicalize(slot_of);
}

absl::StatusOr<PoolAlgorithm> ParsePoolAlgorithm(const std::string& name) {
  if (name == "kmeans") return PoolAlgorithm::kKMeans;
  if (name == "hierarchical-single") return PoolAlgorithm::kHierarchicalSingle;
  if (name == "hierarchical-complete") {
    return PoolAlgorithm::kHierarchicalComplete;
  }
  if (name == "hierarchical-average") {
    return PoolAlgorithm::kHierarchicalAverage;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown pool algorithm '", name, "'"));
}

std::string PoolAlgorithmName(PoolAlgorithm algorithm) {
  switch (algorithm) {
    case PoolAlgorithm::kKMeans:
      return "kmeans";
    case PoolAlgorithm::kHierarchicalSingle:
      return "hierarchical-single";
    case PoolAlgorithm::kHierarchicalComplete:
      return "hierarchical-complete";
    case PoolAlgorithm::kHierarchicalAverage:
      return "hierarchical-average";
  }
  return "?";
}

absl::Status ValidatePoolConfig(const PoolConfig& config, int num_instances) {
  if (config.algorithms.empty()) {
    return absl::InvalidArgumentError("pool: algorithm list is empty");
  }
  if (config.k_lo < 2 || config.k_lo > config.k_hi ||
      config.k_hi >= num_instances) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "pool: need 2 <= k_lo <= k_hi < N, got [%d, %d] with N=%d",
        config.k_lo, config.k_hi, num_instances));
  }
  if (config.runs_per_k < 1) {
    return absl::InvalidArgumentError("pool: runs_per_k must be >= 1");
  }
  return absl::OkStatus();
}

std::vector<Bitset> LabelsToClusters(const Labels& labels) {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  std::vector<Bitset> out(k, Bitset(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) out[labels[i]].Set(i);
  }
  return out;
}

absl::StatusOr<std::vector<CandidateCluster>> GeneratePool(
    const Dataset& dataset, const PoolConfig& config, int first_id) {
  if (absl::Status s = ValidatePoolConfig(config, dataset.num_instances());
      !s.ok()) {
    return s;
  }
  std::vector<CandidateCluster> pool;
  int next_id = first_id;
  for (PoolAlgorithm algorithm : config.algorithms) {
    for (int k = config.k_lo; k <= config.k_hi; ++k) {
      // Agglomerative runs are deterministic, so repeats add nothing.
      const int runs =
          algorithm == PoolAlgorithm::kKMeans ? config.runs_per_k : 1;
      for (int run = 0; run < runs; ++run) {
        Provenance prov;
        prov.algorithm = PoolAlgorithmName(algorithm);
        prov.k = k;
        prov.run = run;
        absl::StatusOr<Labels> labels;
        switch (algorithm) {
          case PoolAlgorithm::kKMeans:
            prov.seed = DeriveSeed(config.base_seed,
                                   {static_cast<uint64_t>(algorithm),
                                    static_cast<uint64_t>(k),
                                    static_cast<uint64_t>(run)});
            labels = KMeans(dataset, k, prov.seed);
            break;
          case PoolAlgorithm::kHierarchicalSingle:
            labels = Hierarchical(dataset, k, Linkage::kSingle);
            break;
          case PoolAlgorithm::kHierarchicalComplete:
            labels = Hierarchical(dataset, k, Linkage::kComplete);
            break;
          case PoolAlgorithm::kHierarchicalAverage:
            labels = Hierarchical(dataset, k, Linkage::kAverage);
            break;
        }
        if (!labels.ok()) return labels.status();
        for (Bitset& members : LabelsToClusters(*labels)) {
          pool.push_back(
              MakeCluster(dataset, next_id++, std::move(members), prov));
        }
      }
    }
  }
  return pool;
}

absl::StatusOr<std::vector<CandidateCluster>> ParsePartitions(
    const std::string& text, const std::string& source, const Dataset& dataset,
    int first_id, std::vector<std::string>* warnings) {
  std::vector<CandidateCluster> pool;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int next_id = first_id;
  while (std::getline(in, line)) {
    ++lineno;
    absl::string_view body = absl::StripAsciiWhitespace(line);
    if (body.empty() || body.front() == '#') continue;
    Bitset members(dataset.num_instances());
    for (absl::string_view tok :
         absl::StrSplit(body, absl::ByAnyChar(" \t,"), absl::SkipEmpty())) {
      const int idx = dataset.FindInstance(std::string(tok));
      if (idx < 0) {
        return absl::NotFoundError(absl::StrFormat(
            "%s:%d: unknown instance id '%s'", source, lineno, tok));
      }
      if (members.Test(idx)) {
        if (warnings != nullptr) {
          warnings->push_back(absl::StrFormat(
              "%s:%d: duplicate instance id '%s' ignored", source, lineno, tok));
        }
        continue;
      }
      members.Set(idx);
    }
    if (members.None()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s:%d: empty cluster", source, lineno));
    }
    Provenance prov;
    prov.algorithm = "imported";
    prov.source = source;
    prov.run = lineno;
    pool.push_back(MakeCluster(dataset, next_id++, std::move(members), prov));
  }
  return pool;
}

absl::StatusOr<std::vector<CandidateCluster>> ImportPartitions(
    const std::string& path, const Dataset& dataset, int first_id,
    std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat(path, ": cannot open file"));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParsePartitions(buf.str(), path, dataset, first_id, warnings);
}

std::vector<CandidateCluster> Dedupe(std::vector<CandidateCluster> pool) {
  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<CandidateCluster> out;
  for (CandidateCluster& c : pool) {
    if (seen.insert(c.members).second) out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json ClusterToJson(const CandidateCluster& cluster) {
  nlohmann::json prov = {{"algorithm", cluster.provenance.algorithm},
                         {"k", cluster.provenance.k},
                         {"run", cluster.provenance.run},
                         {"seed", cluster.provenance.seed}};
  if (!cluster.provenance.source.empty()) {
    prov["source"] = cluster.provenance.source;
  }
  return {{"id", cluster.id},
          {"members", cluster.members.ToIndices()},
          {"provenance", prov},
          {"wcss", cluster.wcss},
          {"diameter", cluster.diameter}};
}

absl::StatusOr<CandidateCluster> ClusterFromJson(const nlohmann::json& json,
                                                 int num_instances) {
  try {
    CandidateCluster c;
    c.id = json.at("id").get<int>();
    c.members = Bitset(num_instances);
    for (int i : json.at("members").get<std::vector<int>>()) {
      if (i < 0 || i >= num_instances) {
        return absl::OutOfRangeError(absl::StrFormat(
            "cluster %d: member %d out of range [0,%d)", c.id, i,
            num_instances));
      }
      c.members.Set(i);
    }
    if (c.members.None()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("cluster %d has no members", c.id));
    }
    const auto& prov = json.at("provenance");
    c.provenance.algorithm = prov.at("algorithm").get<std::string>();
    c.provenance.k = prov.value("k", 0);
    c.provenance.run = prov.value("run", 0);
    c.provenance.seed = prov.value("seed", uint64_t{0});
    c.provenance.source = prov.value("source", std::string());
    c.wcss = json.at("wcss").get<double>();
    c.diameter = json.at("diameter").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed cluster record: ", e.what()));
  }
}

nlohmann::json PoolToJson(const std::vector<CandidateCluster>& pool,
                          int num_instances) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& c : pool) clusters.push_back(ClusterToJson(c));
  return {{"format", "ecs-pool/1"},
          {"n_instances", num_instances},
          {"clusters", clusters}};
}

absl::StatusOr<std::vector<CandidateCluster>> PoolFromJson(
    const nlohmann::json& json, int num_instances) {
  try {
    if (json.at("format").get<std::string>() != "ecs-pool/1") {
      return absl::InvalidArgumentError("not an ecs-pool/1 document");
    }
    if (json.at("n_instances").get<int>() != num_instances) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "pool was built for %d instances, dataset has %d",
          json.at("n_instances").get<int>(), num_instances));
    }
    std::vector<CandidateCluster> pool;
    for (const auto& c : json.at("clusters")) {
      absl::StatusOr<CandidateCluster> cluster =
          ClusterFromJson(c, num_instances);
      if (!cluster.ok()) return cluster.status();
      pool.push_back(*std::move(cluster));
    }
    return pool;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed pool document: ", e.what()));
  }
}

}  // namespace ecs
