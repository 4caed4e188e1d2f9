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

#include "ecs/pipeline.h"

#include <chrono>
#include <climits>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "boost/property_tree/ini_parser.hpp"
#include "boost/property_tree/ptree.hpp"

namespace ecs {
namespace {

namespace fs = std::filesystem;

absl::Status BadValue(const std::string& section, const std::string& key,
                      const std::string& value, const std::string& expected) {
  return absl::InvalidArgumentError(absl::StrFormat(
      "config [%s] %s = '%s': expected %s", section, key, value, expected));
}

bool IsUnset(const std::string& value) {
  const std::string v = absl::AsciiStrToLower(value);
  return v.empty() || v == "none" || v == "inf";
}

std::vector<std::string> SplitList(const std::string& value) {
  return absl::StrSplit(value, absl::ByAnyChar(" ,\t"), absl::SkipEmpty());
}

std::string ResolvePath(const std::string& value, const std::string& base) {
  if (value.empty()) return value;
  fs::path p(value);
  if (p.is_absolute() || base.empty()) return p.lexically_normal().string();
  return (fs::path(base) / p).lexically_normal().string();
}

struct ValueParser {
  const std::string& section;
  const std::string& key;
  const std::string& value;

  absl::StatusOr<int> Int() const {
    int out;
    if (!absl::SimpleAtoi(value, &out)) {
      return BadValue(section, key, value, "an integer");
    }
    return out;
  }
  absl::StatusOr<std::optional<int>> OptionalInt() const {
    if (IsUnset(value)) return std::optional<int>();
    absl::StatusOr<int> v = Int();
    if (!v.ok()) return v.status();
    return std::optional<int>(*v);
  }
  absl::StatusOr<double> Double() const {
    double out;
    if (!absl::SimpleAtod(value, &out)) {
      return BadValue(section, key, value, "a number");
    }
    return out;
  }
  absl::StatusOr<std::optional<double>> OptionalDouble() const {
    if (IsUnset(value)) return std::optional<double>();
    absl::StatusOr<double> v = Double();
    if (!v.ok()) return v.status();
    return std::optional<double>(*v);
  }
  absl::StatusOr<Ratio> RatioValue() const {
    absl::StatusOr<double> v = Double();
    if (!v.ok()) return v.status();
    return Ratio::FromDouble(*v);
  }
  absl::StatusOr<std::optional<Ratio>> OptionalRatio() const {
    if (IsUnset(value)) return std::optional<Ratio>();
    absl::StatusOr<Ratio> v = RatioValue();
    if (!v.ok()) return v.status();
    return std::optional<Ratio>(*v);
  }
  absl::StatusOr<bool> Bool() const {
    bool out;
    if (!absl::SimpleAtob(value, &out)) {
      return BadValue(section, key, value, "true or false");
    }
    return out;
  }
};

#define ECS_ASSIGN(lhs, expr)             \
  do {                                    \
    auto _v = (expr);                     \
    if (!_v.ok()) return _v.status();     \
    lhs = *std::move(_v);                 \
  } while (0)

absl::Status SetData(DataConfig& d, const ValueParser& v,
                     const std::string& base) {
  const std::string& key = v.key;
  if (key == "features") {
    d.features = ResolvePath(v.value, base);
  } else if (key == "descriptors") {
    d.descriptors = ResolvePath(v.value, base);
  } else if (key == "binarize") {
    d.binarize = SplitList(v.value);
  } else if (key == "standardize") {
    ECS_ASSIGN(d.standardize, v.Bool());
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config [data]: unknown key '", key, "'"));
  }
  return absl::OkStatus();
}

absl::Status SetPool(RunConfig& c, const ValueParser& v,
                     const std::string& base) {
  const std::string& key = v.key;
  PoolConfig& g = c.pool.generate;
  if (key == "algorithms") {
    g.algorithms.clear();
    const std::vector<std::string> names = SplitList(v.value);
    c.pool.generate_enabled = !(names.empty() || (names.size() == 1 &&
                                                  names[0] == "none"));
    if (!c.pool.generate_enabled) return absl::OkStatus();
    for (const std::string& name : names) {
      absl::StatusOr<PoolAlgorithm> a = ParsePoolAlgorithm(name);
      if (!a.ok()) return a.status();
      g.algorithms.push_back(*a);
    }
  } else if (key == "k_lo") {
    ECS_ASSIGN(g.k_lo, v.Int());
  } else if (key == "k_hi") {
    ECS_ASSIGN(g.k_hi, v.Int());
  } else if (key == "runs_per_k") {
    ECS_ASSIGN(g.runs_per_k, v.Int());
  } else if (key == "import") {
    c.pool.import = ResolvePath(v.value, base);
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config [pool]: unknown key '", key, "'"));
  }
  return absl::OkStatus();
}

absl::Status SetFilter(FilterSourceConfig& f, const ValueParser& v,
                       const std::string& base) {
  const std::string& key = v.key;
  if (key == "size_min") {
    ECS_ASSIGN(f.filter.size_min, v.OptionalInt());
  } else if (key == "size_max") {
    ECS_ASSIGN(f.filter.size_max, v.OptionalInt());
  } else if (key == "diameter_max") {
    ECS_ASSIGN(f.filter.diameter_max, v.OptionalDouble());
  } else if (key == "iota") {
    ECS_ASSIGN(f.filter.top_iota, v.OptionalDouble());
  } else if (key == "top_metric") {
    if (v.value == "wcss") {
      f.filter.top_metric = TopMetric::kWcss;
    } else if (v.value == "diameter") {
      f.filter.top_metric = TopMetric::kDiameter;
    } else {
      return BadValue("filter", key, v.value, "wcss or diameter");
    }
  } else if (key == "links") {
    f.links = ResolvePath(v.value, base);
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config [filter]: unknown key '", key, "'"));
  }
  return absl::OkStatus();
}

absl::Status SetMine(MinerConfig& m, const ValueParser& v) {
  const std::string& key = v.key;
  if (key == "theta") {
    ECS_ASSIGN(m.theta, v.RatioValue());
  } else if (key == "rho") {
    ECS_ASSIGN(m.rho, v.RatioValue());
  } else if (key == "coverage_strict") {
    ECS_ASSIGN(m.coverage_strict, v.Bool());
  } else if (key == "mode") {
    ECS_ASSIGN(m.mode, ParsePatternMode(v.value));
  } else if (key == "max_pattern_len") {
    ECS_ASSIGN(m.max_pattern_len, v.OptionalInt());
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config [mine]: unknown key '", key, "'"));
  }
  return absl::OkStatus();
}

absl::Status SetSolve(SolverConfig& s, const ValueParser& v) {
  const std::string& key = v.key;
  if (key == "k") {
    ECS_ASSIGN(s.k_min, v.Int());
    s.k_max = s.k_min;
  } else if (key == "k_min") {
    ECS_ASSIGN(s.k_min, v.Int());
  } else if (key == "k_max") {
    std::optional<int> k;
    ECS_ASSIGN(k, v.OptionalInt());
    s.k_max = k.value_or(INT_MAX);
  } else if (key == "nb_clust_min") {
    ECS_ASSIGN(s.nb_clust_min, v.Int());
  } else if (key == "nb_clust_max") {
    ECS_ASSIGN(s.nb_clust_max, v.Int());
  } else if (key == "nb_diff1_max") {
    ECS_ASSIGN(s.nb_diff1_max, v.OptionalInt());
  } else if (key == "max_unassigned") {
    ECS_ASSIGN(s.max_unassigned, v.OptionalInt());
  } else if (key == "eta") {
    ECS_ASSIGN(s.eta, v.OptionalRatio());
  } else if (key == "eta_strict") {
    ECS_ASSIGN(s.eta_strict, v.Bool());
  } else if (key == "phi") {
    ECS_ASSIGN(s.phi, v.OptionalRatio());
  } else if (key == "completeness") {
    ECS_ASSIGN(s.completeness, v.Bool());
  } else if (key == "objective") {
    ECS_ASSIGN(s.objective, ParseObjective(v.value));
  } else if (key == "must_select") {
    s.must_select.clear();
    for (const std::string& id : SplitList(v.value)) {
      int x;
      if (!absl::SimpleAtoi(id, &x)) {
        return BadValue("solve", key, v.value, "a list of cluster ids");
      }
      s.must_select.push_back(x);
    }
  } else if (key == "cannot_select") {
    s.cannot_select.clear();
    for (const std::string& pair : SplitList(v.value)) {
      std::vector<std::string> parts = absl::StrSplit(pair, ':');
      int a;
      int b;
      if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &a) ||
          !absl::SimpleAtoi(parts[1], &b)) {
        return BadValue("solve", key, v.value, "pairs like 3:7");
      }
      s.cannot_select.emplace_back(a, b);
    }
  } else if (key == "time_limit") {
    ECS_ASSIGN(s.time_limit_seconds, v.OptionalDouble());
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config [solve]: unknown key '", key, "'"));
  }
  return absl::OkStatus();
}

absl::Status SetRun(RunConfig& c, const ValueParser& v,
                    const std::string& base) {
  if (v.key == "output") {
    c.output_dir = ResolvePath(v.value, base);
  } else if (v.key == "seed") {
    uint64_t seed;
    if (!absl::SimpleAtoi(v.value, &seed)) {
      return BadValue("run", v.key, v.value, "a non-negative integer");
    }
    c.seed = seed;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config [run]: unknown key '", v.key, "'"));
  }
  return absl::OkStatus();
}

#undef ECS_ASSIGN

absl::Status RequireFile(const std::string& what, const std::string& path) {
  if (path.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(what, " path is not set"));
  }
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    return absl::NotFoundError(absl::StrCat(what, " file not found: ", path));
  }
  return absl::OkStatus();
}

absl::Status StageError(const std::string& stage, const absl::Status& s) {
  return absl::Status(s.code(),
                      absl::StrCat("stage ", stage, ": ", s.message()));
}

}  // namespace

absl::Status SetRunConfigValue(RunConfig* config, const std::string& section,
                               const std::string& key,
                               const std::string& value,
                               const std::string& base_dir) {
  const std::string v(absl::StripAsciiWhitespace(value));
  const ValueParser parser{section, key, v};
  if (section == "data") return SetData(config->data, parser, base_dir);
  if (section == "pool") return SetPool(*config, parser, base_dir);
  if (section == "filter") return SetFilter(config->filter, parser, base_dir);
  if (section == "mine") return SetMine(config->mine, parser);
  if (section == "solve") return SetSolve(config->solve, parser);
  if (section == "run") return SetRun(*config, parser, base_dir);
  return absl::InvalidArgumentError(
      absl::StrCat("config: unknown section [", section, "]"));
}

absl::StatusOr<RunConfig> ParseRunConfig(const std::string& text,
                                         const std::string& base_dir) {
  boost::property_tree::ptree tree;
  try {
    std::istringstream in(text);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config: line ", e.line(), ": ", e.message()));
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config: key '", section, "' must be inside a [section]"));
    }
    for (const auto& [key, node] : body) {
      absl::Status s = SetRunConfigValue(&config, section, key,
                                         node.get_value<std::string>(),
                                         base_dir);
      if (!s.ok()) return s;
    }
  }
  return config;
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string base = fs::path(path).parent_path().string();
  absl::StatusOr<RunConfig> config = ParseRunConfig(buffer.str(), base);
  if (!config.ok()) {
    return absl::Status(config.status().code(),
                        absl::StrCat(path, ": ", config.status().message()));
  }
  return config;
}

absl::Status ValidateDataConfig(const DataConfig& config) {
  if (absl::Status s = RequireFile("[data] features", config.features);
      !s.ok()) {
    return s;
  }
  if (!config.descriptors.empty()) {
    if (absl::Status s = RequireFile("[data] descriptors", config.descriptors);
        !s.ok()) {
      return s;
    }
  } else if (config.binarize.empty()) {
    return absl::InvalidArgumentError(
        "[data] needs a descriptors file or at least one binarize spec");
  }
  return absl::OkStatus();
}

absl::Status ValidateRunConfig(const RunConfig& config) {
  if (absl::Status s = ValidateDataConfig(config.data); !s.ok()) return s;
  if (!config.pool.generate_enabled && config.pool.import.empty()) {
    return absl::InvalidArgumentError(
        "[pool] has no algorithms and no import file");
  }
  if (config.pool.generate_enabled) {
    // The instance count is not known yet; only the upper bound is skipped.
    if (absl::Status s = ValidatePoolConfig(config.pool.generate, INT_MAX);
        !s.ok()) {
      return s;
    }
  }
  if (!config.pool.import.empty()) {
    if (absl::Status s = RequireFile("[pool] import", config.pool.import);
        !s.ok()) {
      return s;
    }
  }
  if (!config.filter.links.empty()) {
    if (absl::Status s = RequireFile("[filter] links", config.filter.links);
        !s.ok()) {
      return s;
    }
  }
  if (absl::Status s = ValidateFilterConfig(config.filter.filter, INT_MAX);
      !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidateMinerConfig(config.mine); !s.ok()) return s;
  return ValidateSolverConfig(config.solve);
}

absl::StatusOr<Dataset> PrepareDataset(const DataConfig& config) {
  if (absl::Status s = ValidateDataConfig(config); !s.ok()) return s;
  absl::StatusOr<Dataset> dataset =
      config.descriptors.empty()
          ? LoadFeaturesOnly(config.features)
          : LoadDataset(config.features, config.descriptors);
  if (!dataset.ok()) return dataset.status();
  for (const std::string& text : config.binarize) {
    absl::StatusOr<BinarizationSpec> spec =
        ParseBinarizationSpec(text, dataset->feature_names());
    if (!spec.ok()) return spec.status();
    dataset = Binarize(*dataset, *spec);
    if (!dataset.ok()) return dataset.status();
  }
  if (config.standardize) return dataset->Standardized();
  return dataset;
}

absl::StatusOr<std::vector<CandidateCluster>> BuildPool(
    const RunConfig& config, const Dataset& dataset,
    std::vector<Removal>* removals, std::vector<std::string>* warnings) {
  std::vector<CandidateCluster> pool;
  if (config.pool.generate_enabled) {
    PoolConfig generate = config.pool.generate;
    generate.base_seed = config.seed;
    absl::StatusOr<std::vector<CandidateCluster>> generated =
        GeneratePool(dataset, generate);
    if (!generated.ok()) return generated.status();
    pool = *std::move(generated);
  }
  if (!config.pool.import.empty()) {
    absl::StatusOr<std::vector<CandidateCluster>> imported = ImportPartitions(
        config.pool.import, dataset, static_cast<int>(pool.size()), warnings);
    if (!imported.ok()) return imported.status();
    for (CandidateCluster& c : *imported) pool.push_back(std::move(c));
  }
  pool = Dedupe(std::move(pool));
  FilterConfig filter = config.filter.filter;
  if (!config.filter.links.empty()) {
    if (absl::Status s =
            LoadLinkConstraints(config.filter.links, dataset, &filter);
        !s.ok()) {
      return s;
    }
  }
  if (absl::Status s = ValidateFilterConfig(filter, dataset.num_instances());
      !s.ok()) {
    return s;
  }
  return ApplyFilters(pool, filter, removals);
}

absl::StatusOr<IcsInstance> MineInstance(
    const std::vector<CandidateCluster>& pool, const Dataset& dataset,
    const MinerConfig& config) {
  if (config.mode == PatternMode::kSingle) {
    if (absl::Status s = ValidateMinerConfig(config); !s.ok()) return s;
    absl::StatusOr<IcsInstance> inst =
        SingleDescriptorMode(pool, dataset, config.theta, config.rho,
                             config.coverage_strict);
    return inst;
  }
  return BuildInstance(pool, dataset, config);
}

int ExitCodeFor(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return 0;
    case SolveStatus::kInfeasible:
      return 2;
    case SolveStatus::kTimeoutBestKnown:
    case SolveStatus::kTimeoutNoSolution:
      return 3;
  }
  return 1;
}

std::string InfeasibilityHint(const Solution& solution) {
  std::optional<ConstraintFamily> f = solution.stats.TightestFamily();
  if (!f) return "no constraint failure recorded";
  return absl::StrCat("tightest constraint family: ", ConstraintFamilyName(*f),
                      " (", solution.stats.failures[static_cast<int>(*f)],
                      " failures during search)");
}

absl::Status WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::Status WriteJson(const std::string& path, const nlohmann::json& json) {
  return WriteText(path, json.dump(2) + "\n");
}

absl::StatusOr<nlohmann::json> ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": invalid JSON: ", e.what()));
  }
}

absl::StatusOr<RunOutcome> Run(const RunConfig& config, std::ostream& log) {
  if (absl::Status s = ValidateRunConfig(config); !s.ok()) {
    return StageError("config", s);
  }
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "stage config: cannot create output directory ", config.output_dir));
  }
  const fs::path out(config.output_dir);
  using Clock = std::chrono::steady_clock;
  Clock::time_point t0 = Clock::now();
  auto lap = [&](const std::string& stage) {
    const Clock::time_point now = Clock::now();
    log << absl::StrFormat("[%s] %.3f s\n", stage,
                           std::chrono::duration<double>(now - t0).count());
    t0 = now;
  };

  absl::StatusOr<Dataset> dataset = PrepareDataset(config.data);
  if (!dataset.ok()) return StageError("load", dataset.status());
  lap("load");

  std::vector<Removal> removals;
  std::vector<std::string> warnings;
  absl::StatusOr<std::vector<CandidateCluster>> pool =
      BuildPool(config, *dataset, &removals, &warnings);
  for (const std::string& w : warnings) log << "warning: " << w << "\n";
  if (!pool.ok()) return StageError("pool", pool.status());
  log << absl::StrFormat("pool: %d clusters kept, %d removed by filters\n",
                         pool->size(), removals.size());
  if (absl::Status s = WriteJson((out / "pool.json").string(),
                                 PoolToJson(*pool, dataset->num_instances()));
      !s.ok()) {
    return StageError("pool", s);
  }
  lap("pool");

  absl::StatusOr<IcsInstance> instance =
      MineInstance(*pool, *dataset, config.mine);
  if (!instance.ok()) return StageError("mine", instance.status());
  log << absl::StrFormat("mine: %d clusters with patterns, %d patterns\n",
                         instance->num_clusters(), instance->num_patterns());
  if (absl::Status s =
          WriteJson((out / "instance.json").string(), InstanceToJson(*instance));
      !s.ok()) {
    return StageError("mine", s);
  }
  lap("mine");

  absl::StatusOr<Solution> solution = Solve(*instance, config.solve);
  if (!solution.ok()) return StageError("solve", solution.status());
  log << absl::StrFormat("solve: %s, %d nodes\n",
                         SolveStatusName(solution->status),
                         solution->stats.nodes);
  if (!solution->has_solution()) log << InfeasibilityHint(*solution) << "\n";
  if (absl::Status s =
          WriteJson((out / "solution.json").string(),
                    SolutionToJson(*instance, config.solve, *solution));
      !s.ok()) {
    return StageError("solve", s);
  }
  lap("solve");

  RunOutcome outcome;
  outcome.exit_code = ExitCodeFor(solution->status);
  // A report from an earlier run in the same directory would be misleading.
  fs::remove(out / "report.json", ec);
  fs::remove(out / "report.txt", ec);
  if (solution->has_solution()) {
    ExplanationReport report = ReportSolution(*solution, *instance, *dataset);
    if (absl::Status s =
            WriteJson((out / "report.json").string(), ReportToJson(report));
        !s.ok()) {
      return StageError("report", s);
    }
    if (absl::Status s =
            WriteText((out / "report.txt").string(), ReportToTable(report));
        !s.ok()) {
      return StageError("report", s);
    }
    outcome.report = std::move(report);
    lap("report");
  }
  outcome.solution = *std::move(solution);
  return outcome;
}

}  // namespace ecs
