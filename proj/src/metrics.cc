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

#include "ecs/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace ecs {

double Pcr(const std::vector<int>& pattern, const Bitset& cluster,
           const Dataset& dataset) {
  const size_t size = cluster.Count();
  if (size == 0) return 0;
  return static_cast<double>(CoverCount(pattern, cluster, dataset)) / size;
}

double Ec(const std::vector<std::vector<int>>& explanation,
          const Bitset& cluster, const Dataset& dataset) {
  const size_t size = cluster.Count();
  if (size == 0) return 0;
  Bitset covered(dataset.num_instances());
  for (const std::vector<int>& p : explanation) {
    covered |= dataset.CoveredInstances(p);
  }
  return static_cast<double>(covered.IntersectionCount(cluster)) / size;
}

double Ipc(const std::vector<int>& pattern, int cluster_index,
           const std::vector<Bitset>& clustering, const Dataset& dataset) {
  const int k = static_cast<int>(clustering.size());
  if (k <= 1) return 1.0;
  const Bitset covered = dataset.CoveredInstances(pattern);
  double sum = 0;
  for (int c = 0; c < k; ++c) {
    if (c == cluster_index) continue;
    const double size = static_cast<double>(clustering[c].Count());
    sum += 1.0 - (size == 0 ? 0.0 : covered.IntersectionCount(clustering[c]) /
                                         size);
  }
  return sum / (k - 1);
}

double Ari(const Labels& a, const Labels& b) {
  const int64_t n = static_cast<int64_t>(a.size());
  if (n != static_cast<int64_t>(b.size()) || n < 2) return 1.0;
  // Unassigned instances become fresh singleton labels.
  auto relabel = [n](const Labels& l) {
    std::vector<int64_t> out(n);
    for (int64_t i = 0; i < n; ++i) out[i] = l[i] >= 0 ? l[i] : -1 - i;
    return out;
  };
  const std::vector<int64_t> la = relabel(a);
  const std::vector<int64_t> lb = relabel(b);
  std::map<std::pair<int64_t, int64_t>, int64_t> joint;
  std::map<int64_t, int64_t> ra;
  std::map<int64_t, int64_t> rb;
  for (int64_t i = 0; i < n; ++i) {
    ++joint[{la[i], lb[i]}];
    ++ra[la[i]];
    ++rb[lb[i]];
  }
  auto pairs = [](int64_t x) { return static_cast<double>(x) * (x - 1) / 2; };
  double index = 0;
  for (const auto& [key, count] : joint) index += pairs(count);
  double sum_a = 0;
  for (const auto& [key, count] : ra) sum_a += pairs(count);
  double sum_b = 0;
  for (const auto& [key, count] : rb) sum_b += pairs(count);
  const double expected = sum_a * sum_b / pairs(n);
  const double max_index = (sum_a + sum_b) / 2;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

ExplanationReport Report(const ExplainedClustering& clustering,
                         const Dataset& dataset) {
  ExplanationReport report;
  const int k = static_cast<int>(clustering.clusters.size());
  Bitset assigned(dataset.num_instances());
  for (int c = 0; c < k; ++c) {
    const Bitset& members = clustering.clusters[c];
    assigned |= members;
    ClusterReport cr;
    cr.cluster_id = clustering.ids[c];
    cr.size = static_cast<int>(members.Count());
    for (const std::vector<int>& p : clustering.explanations[c]) {
      PatternReport pr;
      pr.items = p;
      std::vector<std::string> names;
      for (int t : p) names.push_back(dataset.descriptor_names()[t]);
      pr.name = "{" + absl::StrJoin(names, ", ") + "}";
      pr.pcr = Pcr(p, members, dataset);
      pr.ipc = Ipc(p, c, clustering.clusters, dataset);
      cr.mean_pcr += pr.pcr;
      cr.mean_ipc += pr.ipc;
      cr.patterns.push_back(std::move(pr));
    }
    if (!cr.patterns.empty()) {
      cr.mean_pcr /= cr.patterns.size();
      cr.mean_ipc /= cr.patterns.size();
    }
    cr.ec = Ec(clustering.explanations[c], members, dataset);
    report.mean_pcr += cr.mean_pcr;
    report.mean_ec += cr.ec;
    report.mean_ipc += cr.mean_ipc;
    report.clusters.push_back(std::move(cr));
  }
  if (k > 0) {
    report.mean_pcr /= k;
    report.mean_ec /= k;
    report.mean_ipc /= k;
  }
  report.unassigned =
      dataset.num_instances() - static_cast<int>(assigned.Count());
  return report;
}

ExplainedClustering SolutionClustering(const Solution& solution,
                                       const IcsInstance& instance) {
  ExplainedClustering out;
  if (!solution.has_solution()) return out;
  for (int c = 0; c < instance.num_clusters(); ++c) {
    if (!solution.selected[c]) continue;
    out.ids.push_back(instance.clusters[c].id);
    out.clusters.push_back(instance.clusters[c].members);
    std::vector<std::vector<int>> expl;
    for (int p : solution.explanations[c]) {
      expl.push_back(instance.patterns[p]);
    }
    out.explanations.push_back(std::move(expl));
  }
  return out;
}

ExplanationReport ReportSolution(const Solution& solution,
                                 const IcsInstance& instance,
                                 const Dataset& dataset) {
  return Report(SolutionClustering(solution, instance), dataset);
}

ExplainedClustering BaselineExplanations(const std::vector<Bitset>& clusters,
                                         const Dataset& dataset, Ratio theta,
                                         PatternMode mode,
                                         bool coverage_strict) {
  ExplainedClustering out;
  out.clusters = clusters;
  for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
    out.ids.push_back(c);
    const int size = static_cast<int>(clusters[c].Count());
    const int min_support =
        static_cast<int>(MinCoveringCount(size, theta, coverage_strict));
    std::vector<std::vector<int>> expl;
    if (mode == PatternMode::kLcm) {
      std::vector<std::vector<int>> rows;
      for (int i : clusters[c].ToIndices()) {
        rows.push_back(dataset.descriptor_row(i).ToIndices());
      }
      for (const Pattern& p :
           MineClosed(rows, dataset.num_descriptors(), min_support)) {
        expl.push_back(p.items);
      }
    } else {
      for (int t = 0; t < dataset.num_descriptors(); ++t) {
        if (static_cast<int>(clusters[c].IntersectionCount(
                dataset.descriptor_column(t))) >= min_support) {
          expl.push_back({t});
        }
      }
    }
    out.explanations.push_back(std::move(expl));
  }
  return out;
}

Labels ClustersToLabels(const std::vector<Bitset>& clusters,
                        int num_instances) {
  Labels labels(num_instances, -1);
  for (int c = static_cast<int>(clusters.size()) - 1; c >= 0; --c) {
    for (int i : clusters[c].ToIndices()) labels[i] = c;
  }
  return labels;
}

double RoundHalfUp2(double value) {
  // The small offset absorbs binary representation error, so 0.125 -> 0.13.
  return std::floor(value * 100.0 + 0.5 + 1e-9) / 100.0;
}

nlohmann::json ReportToJson(const ExplanationReport& report) {
  nlohmann::json j;
  j["format"] = "ecs-report/1";
  nlohmann::json clusters = nlohmann::json::array();
  for (const ClusterReport& cr : report.clusters) {
    nlohmann::json patterns = nlohmann::json::array();
    for (const PatternReport& pr : cr.patterns) {
      patterns.push_back({{"name", pr.name},
                          {"items", pr.items},
                          {"pcr", pr.pcr},
                          {"ipc", pr.ipc}});
    }
    clusters.push_back({{"id", cr.cluster_id},
                        {"size", cr.size},
                        {"patterns", patterns},
                        {"pcr", cr.mean_pcr},
                        {"ec", cr.ec},
                        {"ipc", cr.mean_ipc}});
  }
  j["clusters"] = clusters;
  j["unassigned"] = report.unassigned;
  j["mean"] = {{"pcr", report.mean_pcr},
               {"ec", report.mean_ec},
               {"ipc", report.mean_ipc}};
  return j;
}

std::string ReportToTable(const ExplanationReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"cluster", "size", "explanation", "PCR", "EC", "IPC"});
  auto fmt = [](double v) { return absl::StrFormat("%.2f", RoundHalfUp2(v)); };
  for (const ClusterReport& cr : report.clusters) {
    std::vector<std::string> names;
    for (const PatternReport& pr : cr.patterns) names.push_back(pr.name);
    rows.push_back({absl::StrCat(cr.cluster_id), absl::StrCat(cr.size),
                    absl::StrJoin(names, " "), fmt(cr.mean_pcr), fmt(cr.ec),
                    fmt(cr.mean_ipc)});
  }
  rows.push_back({"mean", "", "", fmt(report.mean_pcr), fmt(report.mean_ec),
                  fmt(report.mean_ipc)});
  std::vector<size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      line += absl::StrFormat("%-*s", static_cast<int>(width[i]), row[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  absl::StrAppend(&out, "unassigned instances: ", report.unassigned, "\n");
  return out;
}

}  // namespace ecs
