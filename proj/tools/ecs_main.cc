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

// Command-line entry point: `run` executes the whole pipeline from a config
// file; `pool`, `mine`, `solve` and `metrics` run one stage on interchange
// files; `halfmoon` writes the synthetic two-moons dataset.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "ecs/halfmoon.h"
#include "ecs/metrics.h"
#include "ecs/pipeline.h"

namespace ecs {
namespace {

constexpr int kErrorExit = 1;

struct Flag {
  const char* name;
  const char* section;
  const char* key;
  const char* help;
};

// Flags that override a config key. Each subcommand registers the groups it
// needs.
const std::vector<Flag> kDataFlags = {
    {"--features", "data", "features", "numeric feature CSV"},
    {"--descriptors", "data", "descriptors", "Boolean descriptor CSV"},
    {"--standardize", "data", "standardize", "z-score features (true/false)"},
};
const std::vector<Flag> kPoolFlags = {
    {"--algorithms", "pool", "algorithms",
     "kmeans, hierarchical-{single,complete,average} or none"},
    {"--k-lo", "pool", "k_lo", "smallest k"},
    {"--k-hi", "pool", "k_hi", "largest k"},
    {"--runs", "pool", "runs_per_k", "runs per k"},
    {"--import", "pool", "import", "partition file, one cluster per line"},
    {"--seed", "run", "seed", "base seed"},
    {"--size-min", "filter", "size_min", "minimum cluster size"},
    {"--size-max", "filter", "size_max", "maximum cluster size"},
    {"--diameter-max", "filter", "diameter_max", "maximum cluster diameter"},
    {"--links", "filter", "links", "ML/CL constraint file"},
    {"--iota", "filter", "iota", "keep the top iota percent"},
    {"--top-metric", "filter", "top_metric", "wcss or diameter"},
};
const std::vector<Flag> kMineFlags = {
    {"--theta", "mine", "theta", "coverage ratio"},
    {"--rho", "mine", "rho", "dataset-wise discrimination ratio"},
    {"--coverage-strict", "mine", "coverage_strict",
     "require coverage strictly above theta (true/false)"},
    {"--mode", "mine", "mode", "lcm or single"},
    {"--max-len", "mine", "max_pattern_len", "maximum pattern length"},
};
const std::vector<Flag> kSolveFlags = {
    {"--k", "solve", "k", "exact number of clusters"},
    {"--k-min", "solve", "k_min", "minimum number of clusters"},
    {"--k-max", "solve", "k_max", "maximum number of clusters"},
    {"--nb-clust-min", "solve", "nb_clust_min", "min clusters per instance"},
    {"--nb-clust-max", "solve", "nb_clust_max", "max clusters per instance"},
    {"--nb-diff1-max", "solve", "nb_diff1_max",
     "max instances in several clusters"},
    {"--max-unassigned", "solve", "max_unassigned",
     "max instances in no cluster"},
    {"--eta", "solve", "eta", "clustering-wise discrimination ratio"},
    {"--eta-strict", "solve", "eta_strict", "use a strict eta bound"},
    {"--phi", "solve", "phi", "cluster-wise discrimination ratio"},
    {"--completeness", "solve", "completeness", "explanation completeness"},
    {"--objective", "solve", "objective", "objective name"},
    {"--must-select", "solve", "must_select", "cluster ids"},
    {"--cannot-select", "solve", "cannot_select", "id pairs like 3:7"},
    {"--time-limit", "solve", "time_limit", "seconds"},
};
const std::vector<Flag> kRunFlags = {
    {"--output", "run", "output", "output directory"},
};

// Config file plus command-line overrides for one subcommand.
class ConfigOptions {
 public:
  void Register(CLI::App* app, const std::vector<std::vector<Flag>>& groups,
                bool with_binarize) {
    app->add_option("--config", config_path_, "INI config file");
    app->add_option("--set", sets_, "override, e.g. solve.phi=0.3");
    if (with_binarize) {
      app->add_option("--binarize", binarize_,
                      "column:scheme (median, quantile, onehot); repeatable");
    }
    for (const auto& group : groups) {
      for (const Flag& f : group) {
        flags_.push_back(f);
        app->add_option(f.name, values_[f.name], f.help);
      }
    }
  }

  absl::StatusOr<RunConfig> Resolve() const {
    RunConfig config;
    if (!config_path_.empty()) {
      absl::StatusOr<RunConfig> loaded = LoadRunConfig(config_path_);
      if (!loaded.ok()) return loaded.status();
      config = *std::move(loaded);
    }
    if (!binarize_.empty()) {
      absl::Status s = SetRunConfigValue(&config, "data", "binarize",
                                         absl::StrJoin(binarize_, " "), "");
      if (!s.ok()) return s;
    }
    for (const Flag& f : flags_) {
      const std::optional<std::string>& v = values_.at(f.name);
      if (!v) continue;
      absl::Status s = SetRunConfigValue(&config, f.section, f.key, *v, "");
      if (!s.ok()) return s;
    }
    for (const std::string& set : sets_) {
      const size_t dot = set.find('.');
      const size_t eq = set.find('=');
      if (dot == std::string::npos || eq == std::string::npos || eq < dot) {
        return absl::InvalidArgumentError(
            absl::StrCat("--set expects section.key=value, got '", set, "'"));
      }
      absl::Status s =
          SetRunConfigValue(&config, set.substr(0, dot),
                            set.substr(dot + 1, eq - dot - 1),
                            set.substr(eq + 1), "");
      if (!s.ok()) return s;
    }
    return config;
  }

 private:
  std::string config_path_;
  std::vector<std::string> sets_;
  std::vector<std::string> binarize_;
  std::vector<Flag> flags_;
  std::map<std::string, std::optional<std::string>> values_;
};

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return kErrorExit;
}

void PrintSolution(const IcsInstance& instance, const Solution& solution) {
  std::cout << "status: " << SolveStatusName(solution.status) << "\n";
  if (!solution.has_solution()) {
    std::cout << InfeasibilityHint(solution) << "\n";
    return;
  }
  std::cout << absl::StrFormat("objective: %.6g\n", solution.objective_value);
  for (int c = 0; c < instance.num_clusters(); ++c) {
    if (!solution.selected[c]) continue;
    std::vector<std::string> names;
    for (int p : solution.explanations[c]) {
      names.push_back(instance.PatternName(p));
    }
    std::cout << absl::StrFormat("cluster %d (%d instances): %s\n",
                                 instance.clusters[c].id,
                                 instance.cluster_size(c),
                                 absl::StrJoin(names, " "));
  }
}

int RunPool(const ConfigOptions& options, const std::string& out) {
  absl::StatusOr<RunConfig> config = options.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<Dataset> dataset = PrepareDataset(config->data);
  if (!dataset.ok()) return Fail(dataset.status());
  std::vector<Removal> removals;
  std::vector<std::string> warnings;
  absl::StatusOr<std::vector<CandidateCluster>> pool =
      BuildPool(*config, *dataset, &removals, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  if (!pool.ok()) return Fail(pool.status());
  for (const Removal& r : removals) {
    std::cerr << "removed cluster " << r.cluster_id << ": " << r.reason
              << "\n";
  }
  if (absl::Status s =
          WriteJson(out, PoolToJson(*pool, dataset->num_instances()));
      !s.ok()) {
    return Fail(s);
  }
  std::cout << pool->size() << " clusters written to " << out << "\n";
  return 0;
}

int RunMine(const ConfigOptions& options, const std::string& pool_path,
            const std::string& out) {
  absl::StatusOr<RunConfig> config = options.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<Dataset> dataset = PrepareDataset(config->data);
  if (!dataset.ok()) return Fail(dataset.status());
  absl::StatusOr<nlohmann::json> json = ReadJson(pool_path);
  if (!json.ok()) return Fail(json.status());
  absl::StatusOr<std::vector<CandidateCluster>> pool =
      PoolFromJson(*json, dataset->num_instances());
  if (!pool.ok()) return Fail(pool.status());
  absl::StatusOr<IcsInstance> instance =
      MineInstance(*pool, *dataset, config->mine);
  if (!instance.ok()) return Fail(instance.status());
  if (absl::Status s = WriteJson(out, InstanceToJson(*instance)); !s.ok()) {
    return Fail(s);
  }
  std::cout << absl::StrFormat("%d clusters, %d patterns written to %s\n",
                               instance->num_clusters(),
                               instance->num_patterns(), out);
  return 0;
}

int RunSolve(const ConfigOptions& options, const std::string& instance_path,
             const std::string& out) {
  absl::StatusOr<RunConfig> config = options.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<nlohmann::json> json = ReadJson(instance_path);
  if (!json.ok()) return Fail(json.status());
  absl::StatusOr<IcsInstance> instance = InstanceFromJson(*json);
  if (!instance.ok()) return Fail(instance.status());
  absl::StatusOr<Solution> solution = Solve(*instance, config->solve);
  if (!solution.ok()) return Fail(solution.status());
  std::cerr << absl::StrFormat("solve: %d nodes, %.3f s\n",
                               solution->stats.nodes, solution->stats.seconds);
  if (!out.empty()) {
    if (absl::Status s =
            WriteJson(out, SolutionToJson(*instance, config->solve, *solution));
        !s.ok()) {
      return Fail(s);
    }
  }
  PrintSolution(*instance, *solution);
  return ExitCodeFor(solution->status);
}

int RunMetrics(const ConfigOptions& options, const std::string& instance_path,
               const std::string& solution_path,
               const std::string& clustering_path, const std::string& out,
               const std::string& table) {
  absl::StatusOr<RunConfig> config = options.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<Dataset> dataset = PrepareDataset(config->data);
  if (!dataset.ok()) return Fail(dataset.status());
  ExplanationReport report;
  if (!clustering_path.empty()) {
    // Baseline: explain an external clustering with all frequent patterns.
    absl::StatusOr<std::vector<CandidateCluster>> clusters =
        ImportPartitions(clustering_path, *dataset);
    if (!clusters.ok()) return Fail(clusters.status());
    std::vector<Bitset> members;
    for (const CandidateCluster& c : *clusters) members.push_back(c.members);
    report = Report(BaselineExplanations(members, *dataset, config->mine.theta,
                                         config->mine.mode,
                                         config->mine.coverage_strict),
                    *dataset);
  } else {
    if (instance_path.empty() || solution_path.empty()) {
      return Fail(absl::InvalidArgumentError(
          "metrics needs --instance and --solution, or --clustering"));
    }
    absl::StatusOr<nlohmann::json> ij = ReadJson(instance_path);
    if (!ij.ok()) return Fail(ij.status());
    absl::StatusOr<IcsInstance> instance = InstanceFromJson(*ij);
    if (!instance.ok()) return Fail(instance.status());
    absl::StatusOr<nlohmann::json> sj = ReadJson(solution_path);
    if (!sj.ok()) return Fail(sj.status());
    absl::StatusOr<Solution> solution = SolutionFromJson(*instance, *sj);
    if (!solution.ok()) return Fail(solution.status());
    if (!solution->has_solution()) {
      return Fail(absl::FailedPreconditionError(
          "the solution file holds no clustering"));
    }
    report = ReportSolution(*solution, *instance, *dataset);
  }
  if (!out.empty()) {
    if (absl::Status s = WriteJson(out, ReportToJson(report)); !s.ok()) {
      return Fail(s);
    }
  }
  if (!table.empty()) {
    if (absl::Status s = WriteText(table, ReportToTable(report)); !s.ok()) {
      return Fail(s);
    }
  }
  std::cout << ReportToTable(report);
  return 0;
}

int RunAll(const ConfigOptions& options) {
  absl::StatusOr<RunConfig> config = options.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<RunOutcome> outcome = Run(*config, std::cerr);
  if (!outcome.ok()) return Fail(outcome.status());
  std::cout << "status: " << SolveStatusName(outcome->solution.status)
            << "\n";
  if (outcome->report) {
    std::cout << ReportToTable(*outcome->report);
  } else {
    std::cout << InfeasibilityHint(outcome->solution) << "\n";
  }
  return outcome->exit_code;
}

int RunHalfmoon(const HalfmoonConfig& config, const std::string& dir) {
  absl::StatusOr<Halfmoon> halfmoon = GenerateHalfmoon(config);
  if (!halfmoon.ok()) return Fail(halfmoon.status());
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (absl::Status s = WriteHalfmoon(*halfmoon, dir); !s.ok()) return Fail(s);
  std::cout << "halfmoon dataset written to " << dir << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Explainable clustering by cluster selection"};
  app.require_subcommand(1);

  ConfigOptions pool_opts;
  std::string pool_out = "pool.json";
  CLI::App* pool = app.add_subcommand(
      "pool", "generate or import candidate clusters, dedupe and filter");
  pool_opts.Register(pool, {kDataFlags, kPoolFlags}, true);
  pool->add_option("--out", pool_out, "output pool JSON");

  ConfigOptions mine_opts;
  std::string mine_pool;
  std::string mine_out = "instance.json";
  CLI::App* mine =
      app.add_subcommand("mine", "mine candidate explanations per cluster");
  mine_opts.Register(mine, {kDataFlags, kMineFlags}, true);
  mine->add_option("--pool", mine_pool, "pool JSON")->required();
  mine->add_option("--out", mine_out, "output instance JSON");

  ConfigOptions solve_opts;
  std::string solve_instance;
  std::string solve_out = "solution.json";
  CLI::App* solve =
      app.add_subcommand("solve", "select clusters and explanations");
  solve_opts.Register(solve, {kSolveFlags}, false);
  solve->add_option("--instance", solve_instance, "instance JSON")->required();
  solve->add_option("--out", solve_out, "output solution JSON");

  ConfigOptions metrics_opts;
  std::string metrics_instance;
  std::string metrics_solution;
  std::string metrics_clustering;
  std::string metrics_out;
  std::string metrics_table;
  CLI::App* metrics =
      app.add_subcommand("metrics", "PCR, EC and IPC of an explained clustering");
  metrics_opts.Register(metrics, {kDataFlags, kMineFlags}, true);
  metrics->add_option("--instance", metrics_instance, "instance JSON");
  metrics->add_option("--solution", metrics_solution, "solution JSON");
  metrics->add_option("--clustering", metrics_clustering,
                      "partition file to explain with frequent patterns");
  metrics->add_option("--out", metrics_out, "output report JSON");
  metrics->add_option("--table", metrics_table, "output text table");

  ConfigOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "run the whole pipeline");
  run_opts.Register(
      run, {kDataFlags, kPoolFlags, kMineFlags, kSolveFlags, kRunFlags}, true);

  HalfmoonConfig hm;
  std::string hm_dir = "halfmoon";
  CLI::App* halfmoon =
      app.add_subcommand("halfmoon", "write the synthetic two-moons dataset");
  halfmoon->add_option("--out-dir", hm_dir, "output directory");
  halfmoon->add_option("--seed", hm.seed, "descriptor and noise seed");
  halfmoon->add_option("--points", hm.points_per_moon, "points per moon");
  halfmoon->add_option("--noise", hm.noise, "Gaussian noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kErrorExit;
  }
  if (pool->parsed()) return RunPool(pool_opts, pool_out);
  if (mine->parsed()) return RunMine(mine_opts, mine_pool, mine_out);
  if (solve->parsed()) return RunSolve(solve_opts, solve_instance, solve_out);
  if (metrics->parsed()) {
    return RunMetrics(metrics_opts, metrics_instance, metrics_solution,
                      metrics_clustering, metrics_out, metrics_table);
  }
  if (run->parsed()) return RunAll(run_opts);
  if (halfmoon->parsed()) return RunHalfmoon(hm, hm_dir);
  return kErrorExit;
}

}  // namespace
}  // namespace ecs

int main(int argc, char** argv) { return ecs::Main(argc, argv); }
