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

#ifndef ECS_PIPELINE_H_
#define ECS_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/dataset.h"
#include "ecs/filter.h"
#include "ecs/metrics.h"
#include "ecs/miner.h"
#include "ecs/pool.h"
#include "ecs/solver.h"
#include "nlohmann/json.hpp"

namespace ecs {

struct DataConfig {
  std::string features;
  std::string descriptors;  // empty: descriptors come from `binarize` only
  std::vector<std::string> binarize;  // "column:scheme"
  bool standardize = false;
};

struct PoolSourceConfig {
  PoolConfig generate;
  bool generate_enabled = true;
  std::string import;  // partition file, optional
};

struct FilterSourceConfig {
  FilterConfig filter;          // link pairs are filled in from `links`
  std::string links;            // "ML a b" / "CL a b" file, optional
};

// Every parameter of the four stages. Relative paths are resolved against
// the directory of the config file.
struct RunConfig {
  DataConfig data;
  PoolSourceConfig pool;
  FilterSourceConfig filter;
  MinerConfig mine;
  SolverConfig solve;
  std::string output_dir = ".";
  uint64_t seed = 0;
};

// INI-style text with [data], [pool], [filter], [mine], [solve] and [run]
// sections. Unknown keys are errors.
absl::StatusOr<RunConfig> ParseRunConfig(const std::string& text,
                                         const std::string& base_dir);
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);

// Sets a single "section.key" value, as the config file would.
absl::Status SetRunConfigValue(RunConfig* config, const std::string& section,
                               const std::string& key,
                               const std::string& value,
                               const std::string& base_dir);

// Stage checks done before any computation.
absl::Status ValidateDataConfig(const DataConfig& config);
absl::Status ValidateRunConfig(const RunConfig& config);

absl::StatusOr<Dataset> PrepareDataset(const DataConfig& config);

// Generation and/or import, then dedupe and filters. Removals are reported
// through `removals` if given.
absl::StatusOr<std::vector<CandidateCluster>> BuildPool(
    const RunConfig& config, const Dataset& dataset,
    std::vector<Removal>* removals = nullptr,
    std::vector<std::string>* warnings = nullptr);

absl::StatusOr<IcsInstance> MineInstance(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    const MinerConfig& config);

struct RunOutcome {
  Solution solution;
  std::optional<ExplanationReport> report;
  int exit_code = 0;
};

// Runs every stage and writes pool.json, instance.json, solution.json,
// report.json and report.txt into config.output_dir. Progress and timings
// go to `log`.
absl::StatusOr<RunOutcome> Run(const RunConfig& config, std::ostream& log);

// 0 optimal, 2 infeasible, 3 timeout.
int ExitCodeFor(SolveStatus status);

absl::Status WriteJson(const std::string& path, const nlohmann::json& json);
absl::StatusOr<nlohmann::json> ReadJson(const std::string& path);
absl::Status WriteText(const std::string& path, const std::string& text);

// Human-readable hint for an infeasible or failed solve.
std::string InfeasibilityHint(const Solution& solution);

}  // namespace ecs

#endif  // ECS_PIPELINE_H_
