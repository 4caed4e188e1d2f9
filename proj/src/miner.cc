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

#include "ecs/miner.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace ecs {
namespace {

class ClosedMiner {
 public:
  ClosedMiner(const std::vector<std::vector<int>>& transactions, int num_items,
              int min_support)
      : num_items_(num_items),
        min_support_(min_support),
        tids_(num_items, Bitset(transactions.size())) {
    for (size_t r = 0; r < transactions.size(); ++r) {
      for (int item : transactions[r]) tids_[item].Set(r);
    }
  }

  std::vector<Pattern> Run(size_t num_transactions) {
    if (static_cast<int>(num_transactions) < min_support_) return {};
    Bitset all(num_transactions);
    all.SetAll();
    std::vector<bool> root = Closure(all);
    if (std::find(root.begin(), root.end(), true) != root.end()) {
      Emit(root, static_cast<int>(num_transactions));
    }
    Expand(root, all, -1);
    std::sort(out_.begin(), out_.end(),
              [](const Pattern& a, const Pattern& b) { return a.items < b.items; });
    return std::move(out_);
  }

 private:
  // Items present in every transaction of `tids`.
  std::vector<bool> Closure(const Bitset& tids) const {
    std::vector<bool> in(num_items_, false);
    for (int j = 0; j < num_items_; ++j) in[j] = tids.IsSubsetOf(tids_[j]);
    return in;
  }

  void Emit(const std::vector<bool>& items, int support) {
    Pattern p;
    for (int j = 0; j < num_items_; ++j) {
      if (items[j]) p.items.push_back(j);
    }
    p.support = support;
    out_.push_back(std::move(p));
  }

  void Expand(const std::vector<bool>& prefix, const Bitset& tids, int core) {
    for (int e = core + 1; e < num_items_; ++e) {
      if (prefix[e]) continue;
      Bitset next = tids & tids_[e];
      const int support = static_cast<int>(next.Count());
      if (support < min_support_) continue;
      std::vector<bool> closed = Closure(next);
      // Prefix-preserving test: the closure adds no item below e.
      bool preserves = true;
      for (int j = 0; j < e; ++j) {
        if (closed[j] && !prefix[j]) {
          preserves = false;
          break;
        }
      }
      if (!preserves) continue;
      Emit(closed, support);
      Expand(closed, next, e);
    }
  }

  int num_items_;
  int min_support_;
  std::vector<Bitset> tids_;
  std::vector<Pattern> out_;
};

std::vector<std::vector<int>> ClusterTransactions(const Bitset& cluster,
                                                  const Dataset& dataset) {
  std::vector<std::vector<int>> rows;
  for (int i : cluster.ToIndices()) {
    rows.push_back(dataset.descriptor_row(i).ToIndices());
  }
  return rows;
}

absl::StatusOr<IcsInstance> Assemble(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    const MinerConfig& config) {
  if (absl::Status s = ValidateMinerConfig(config); !s.ok()) return s;
  IcsInstance inst;
  inst.num_instances = dataset.num_instances();
  inst.theta = config.theta;
  inst.coverage_strict = config.coverage_strict;
  inst.rho = config.rho;
  inst.mode = config.mode;
  inst.descriptor_names = dataset.descriptor_names();

  std::map<std::vector<int>, int> universe;
  for (const CandidateCluster& cluster : pool) {
    const int size = cluster.size();
    const int min_support = static_cast<int>(
        MinCoveringCount(size, config.theta, config.coverage_strict));
    std::vector<Pattern> mined;
    if (config.mode == PatternMode::kLcm) {
      mined = MineClosed(ClusterTransactions(cluster.members, dataset),
                         dataset.num_descriptors(), min_support);
    } else {
      for (int t = 0; t < dataset.num_descriptors(); ++t) {
        const int count = static_cast<int>(
            cluster.members.IntersectionCount(dataset.descriptor_column(t)));
        if (count >= min_support) mined.push_back({{t}, count});
      }
    }
    std::vector<Pattern> kept =
        DatasetWiseFilter(mined, cluster.members, dataset, config.rho);
    if (config.max_pattern_len) {
      std::erase_if(kept, [&](const Pattern& p) {
        return static_cast<int>(p.items.size()) > *config.max_pattern_len;
      });
    }
    if (kept.empty()) continue;
    std::vector<int> ids;
    for (const Pattern& p : kept) {
      auto [it, inserted] =
          universe.emplace(p.items, static_cast<int>(inst.patterns.size()));
      if (inserted) inst.patterns.push_back(p.items);
      ids.push_back(it->second);
    }
    inst.clusters.push_back(cluster);
    inst.candidates.push_back(std::move(ids));
  }
  if (inst.clusters.empty()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "no candidate cluster has a pattern with theta=%s, rho=%s; lower "
        "theta or raise rho",
        config.theta.ToString(), config.rho.ToString()));
  }
  inst.support = RecomputeSupport(inst, dataset);
  return inst;
}

}  // namespace

std::vector<Pattern> MineClosed(
    const std::vector<std::vector<int>>& transactions, int num_items,
    int min_support) {
  ClosedMiner miner(transactions, num_items, std::max(1, min_support));
  return miner.Run(transactions.size());
}

int CoverCount(const std::vector<int>& pattern, const Bitset& cluster,
               const Dataset& dataset) {
  return static_cast<int>(
      cluster.IntersectionCount(dataset.CoveredInstances(pattern)));
}

bool CoversCount(int64_t count, int64_t size, Ratio theta, bool strict) {
  return strict ? Ratio::CountAbove(count, theta, size)
                : Ratio::CountAtLeast(count, theta, size);
}

int64_t MinCoveringCount(int64_t size, Ratio theta, bool strict) {
  int64_t count = Ratio::CeilTimes(theta, size);
  if (strict && !Ratio::CountAbove(count, theta, size)) ++count;
  return std::max<int64_t>(1, count);
}

bool CoverC(const std::vector<int>& pattern, const Bitset& cluster,
            Ratio theta, const Dataset& dataset, bool strict) {
  return CoversCount(CoverCount(pattern, cluster, dataset),
                     static_cast<int64_t>(cluster.Count()), theta, strict);
}

std::vector<Pattern> DatasetWiseFilter(const std::vector<Pattern>& patterns,
                                       const Bitset& cluster,
                                       const Dataset& dataset, Ratio rho) {
  const Bitset outside = cluster.Complement();
  const int64_t outside_size = static_cast<int64_t>(outside.Count());
  std::vector<Pattern> out;
  for (const Pattern& p : patterns) {
    const int64_t covered =
        static_cast<int64_t>(outside.IntersectionCount(
            dataset.CoveredInstances(p.items)));
    // rho = 0 keeps patterns covering nothing outside the cluster.
    const bool keep = rho.numerator() == 0
                          ? covered == 0
                          : Ratio::CountBelow(covered, rho, outside_size);
    if (keep) out.push_back(p);
  }
  return out;
}

absl::StatusOr<PatternMode> ParsePatternMode(const std::string& name) {
  if (name == "lcm") return PatternMode::kLcm;
  if (name == "single") return PatternMode::kSingle;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown pattern mode '", name, "' (lcm|single)"));
}

std::string PatternModeName(PatternMode mode) {
  return mode == PatternMode::kLcm ? "lcm" : "single";
}

absl::Status ValidateMinerConfig(const MinerConfig& config) {
  if (config.theta.numerator() <= 0 || !config.theta.InUnitInterval()) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must be in (0, 1], got ", config.theta.ToString()));
  }
  if (config.rho.numerator() <= 0 || !config.rho.InUnitInterval()) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must be in (0, 1], got ", config.rho.ToString()));
  }
  if (config.max_pattern_len && *config.max_pattern_len < 1) {
    return absl::InvalidArgumentError("max_pattern_len must be >= 1");
  }
  return absl::OkStatus();
}

std::string IcsInstance::PatternName(int p) const {
  std::vector<std::string> names;
  for (int t : patterns[p]) {
    names.push_back(t < static_cast<int>(descriptor_names.size())
                        ? descriptor_names[t]
                        : absl::StrCat("#", t));
  }
  return absl::StrCat("{", absl::StrJoin(names, ", "), "}");
}

absl::Status ValidateInstance(const IcsInstance& instance) {
  const int n = instance.num_instances;
  const int v = instance.num_clusters();
  const int np = instance.num_patterns();
  if (n < 1) return absl::InvalidArgumentError("instance: N must be >= 1");
  if (static_cast<int>(instance.candidates.size()) != v ||
      static_cast<int>(instance.support.size()) != v) {
    return absl::InvalidArgumentError(
        "instance: candidates and support must have one row per cluster");
  }
  std::set<int> ids;
  for (int c = 0; c < v; ++c) {
    const CandidateCluster& cl = instance.clusters[c];
    if (!ids.insert(cl.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("instance: duplicate cluster id ", cl.id));
    }
    if (static_cast<int>(cl.members.size()) != n || cl.members.None()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "instance: cluster ", cl.id, " has a malformed member set"));
    }
    if (instance.candidates[c].empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "instance: cluster ", cl.id, " has no candidate pattern"));
    }
    std::set<int> seen;
    for (int p : instance.candidates[c]) {
      if (p < 0 || p >= np || !seen.insert(p).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "instance: cluster ", cl.id, " has a bad candidate id ", p));
      }
    }
    if (static_cast<int>(instance.support[c].size()) != np) {
      return absl::InvalidArgumentError(
          "instance: support row length differs from the pattern count");
    }
    for (int p = 0; p < np; ++p) {
      const int s = instance.support[c][p];
      if (s < 0 || s > cl.size()) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "instance: S[%d][%d]=%d outside [0, %d]", c, p, s, cl.size()));
      }
    }
  }
  const int nd = static_cast<int>(instance.descriptor_names.size());
  for (const auto& items : instance.patterns) {
    if (items.empty() || !std::is_sorted(items.begin(), items.end())) {
      return absl::InvalidArgumentError(
          "instance: patterns must be non-empty sorted item lists");
    }
    for (int t : items) {
      if (t < 0 || (nd > 0 && t >= nd)) {
        return absl::InvalidArgumentError(
            absl::StrCat("instance: descriptor index ", t, " out of range"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<IcsInstance> BuildInstance(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    const MinerConfig& config) {
  return Assemble(pool, dataset, config);
}

absl::StatusOr<IcsInstance> SingleDescriptorMode(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    Ratio theta, Ratio rho, bool coverage_strict) {
  MinerConfig config;
  config.theta = theta;
  config.coverage_strict = coverage_strict;
  config.rho = rho;
  config.mode = PatternMode::kSingle;
  return Assemble(pool, dataset, config);
}

std::vector<std::vector<int>> RecomputeSupport(const IcsInstance& instance,
                                               const Dataset& dataset) {
  std::vector<Bitset> covered;
  covered.reserve(instance.patterns.size());
  for (const auto& items : instance.patterns) {
    covered.push_back(dataset.CoveredInstances(items));
  }
  std::vector<std::vector<int>> s(instance.clusters.size());
  for (size_t c = 0; c < instance.clusters.size(); ++c) {
    s[c].resize(covered.size());
    for (size_t p = 0; p < covered.size(); ++p) {
      s[c][p] = static_cast<int>(
          instance.clusters[c].members.IntersectionCount(covered[p]));
    }
  }
  return s;
}

nlohmann::json InstanceToJson(const IcsInstance& instance) {
  nlohmann::json patterns = nlohmann::json::array();
  for (int p = 0; p < instance.num_patterns(); ++p) {
    nlohmann::json names = nlohmann::json::array();
    for (int t : instance.patterns[p]) {
      if (t < static_cast<int>(instance.descriptor_names.size())) {
        names.push_back(instance.descriptor_names[t]);
      }
    }
    patterns.push_back(
        {{"id", p}, {"items", instance.patterns[p]}, {"names", names}});
  }
  nlohmann::json clusters = nlohmann::json::array();
  for (int c = 0; c < instance.num_clusters(); ++c) {
    nlohmann::json cj = ClusterToJson(instance.clusters[c]);
    cj["candidates"] = instance.candidates[c];
    clusters.push_back(std::move(cj));
  }
  return {{"format", "ecs-instance/1"},
          {"n_instances", instance.num_instances},
          {"theta", instance.theta.ToDouble()},
          {"coverage_strict", instance.coverage_strict},
          {"rho", instance.rho.ToDouble()},
          {"mode", PatternModeName(instance.mode)},
          {"descriptor_names", instance.descriptor_names},
          {"patterns", patterns},
          {"clusters", clusters},
          {"support", instance.support}};
}

absl::StatusOr<IcsInstance> InstanceFromJson(const nlohmann::json& json) {
  try {
    if (json.at("format").get<std::string>() != "ecs-instance/1") {
      return absl::InvalidArgumentError("not an ecs-instance/1 document");
    }
    IcsInstance inst;
    inst.num_instances = json.at("n_instances").get<int>();
    inst.theta = Ratio::FromDouble(json.at("theta").get<double>());
    inst.coverage_strict = json.value("coverage_strict", false);
    inst.rho = Ratio::FromDouble(json.value("rho", 1.0));
    absl::StatusOr<PatternMode> mode =
        ParsePatternMode(json.value("mode", std::string("lcm")));
    if (!mode.ok()) return mode.status();
    inst.mode = *mode;
    inst.descriptor_names =
        json.value("descriptor_names", std::vector<std::string>());
    const auto& patterns = json.at("patterns");
    inst.patterns.resize(patterns.size());
    for (const auto& p : patterns) {
      const int id = p.at("id").get<int>();
      if (id < 0 || id >= static_cast<int>(patterns.size())) {
        return absl::InvalidArgumentError(
            absl::StrCat("pattern id ", id, " out of range"));
      }
      inst.patterns[id] = p.at("items").get<std::vector<int>>();
    }
    for (const auto& c : json.at("clusters")) {
      absl::StatusOr<CandidateCluster> cluster =
          ClusterFromJson(c, inst.num_instances);
      if (!cluster.ok()) return cluster.status();
      inst.clusters.push_back(*std::move(cluster));
      inst.candidates.push_back(c.at("candidates").get<std::vector<int>>());
    }
    inst.support = json.at("support").get<std::vector<std::vector<int>>>();
    if (absl::Status s = ValidateInstance(inst); !s.ok()) return s;
    return inst;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed instance document: ", e.what()));
  }
}

}  // namespace ecs
