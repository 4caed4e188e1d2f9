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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "ecs/dataset.h"
#include "ecs/halfmoon.h"
#include "ecs/metrics.h"
#include "ecs/miner.h"
#include "ecs/pipeline.h"
#include "ecs/pool.h"
#include "ecs/rng.h"
#include "ecs/solver.h"
#include "test_util.h"

namespace ecs {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string ConfigPath(const std::string& name) {
  return std::string(ECS_SOURCE_DIR) + "/configs/" + name;
}

// A solution on real data, kept for the constraint audit.
struct Produced {
  std::string label;
  IcsInstance instance;
  SolverConfig config;
  Solution solution;
  std::shared_ptr<const Dataset> dataset;  // null for synthetic instances
};

class Acceptance {
 public:
  int Finish() {
    int failed = 0;
    for (const auto& [name, ok] : results_) failed += !ok;
    std::printf("%d of %zu criteria passed\n",
                static_cast<int>(results_.size()) - failed, results_.size());
    return failed == 0 ? 0 : 1;
  }

  void Record(const std::string& name, bool ok, const std::string& detail) {
    results_.emplace_back(name, ok);
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }

  void Info(const std::string& text) {
    std::printf("INFO %s\n", text.c_str());
    std::fflush(stdout);
  }

  std::vector<Produced>& produced() { return produced_; }

 private:
  std::vector<std::pair<std::string, bool>> results_;
  std::vector<Produced> produced_;
};

// ---------------------------------------------------------------------------

void SolverOracle(Acceptance& acc) {
  const auto start = Clock::now();
  Rng rng(20261016);
  int instances = 0, mismatches = 0, feasible = 0;
  std::set<int> objectives;
  std::set<std::string> families;
  std::string first_error;
  for (; instances < 400; ++instances) {
    const IcsInstance inst = testing::RandomInstance(rng, {});
    const SolverConfig config = testing::RandomConfig(rng, inst);
    objectives.insert(static_cast<int>(config.objective));
    if (config.phi) families.insert("phi");
    if (config.eta) families.insert("eta");
    if (config.completeness) families.insert("completeness");
    if (config.nb_diff1_max) families.insert("overlap");
    if (config.max_unassigned) families.insert("unassigned");
    if (!config.must_select.empty()) families.insert("must");
    if (!config.cannot_select.empty()) families.insert("cannot");
    if (config.nb_clust_max > 1) families.insert("multi-membership");
    auto s = Solve(inst, config);
    auto b = BruteForceSolve(inst, config);
    if (!s.ok() || !b.ok()) {
      ++mismatches;
      if (first_error.empty()) {
        first_error = (!s.ok() ? s.status() : b.status()).ToString();
      }
      continue;
    }
    const bool same = s->status == b->status &&
                      (!s->has_solution() ||
                       s->objective_value == b->objective_value);
    if (!same) {
      ++mismatches;
      if (first_error.empty()) {
        first_error = absl::StrFormat(
            "instance %d (%s): solve %s %.17g, brute force %s %.17g", instances,
            testing::DescribeConfig(config), SolveStatusName(s->status),
            s->objective_value, SolveStatusName(b->status), b->objective_value);
      }
    }
    if (s->has_solution()) {
      ++feasible;
      acc.produced().push_back({absl::StrCat("random #", instances), inst,
                                config, *s, nullptr});
      acc.produced().push_back({absl::StrCat("random #", instances, " (oracle)"),
                                inst, config, *b, nullptr});
    }
  }
  const double secs = Seconds(start);
  const bool ok = mismatches == 0 && objectives.size() == 6 &&
                  families.size() == 8 && secs < 300;
  acc.Record("solver-oracle-equivalence", ok,
             absl::StrFormat("%d instances (%d feasible), %d objectives, %d "
                             "constraint families, %d mismatches, %.1f s%s",
                             instances, feasible, objectives.size(),
                             families.size(), mismatches, secs,
                             first_error.empty() ? "" : "; " + first_error));
}

// Closed itemsets by exhaustive enumeration of all subsets.
std::vector<Pattern> ExhaustiveClosed(const std::vector<std::vector<int>>& rows,
                                      int num_items, int min_support) {
  std::vector<uint32_t> masks;
  for (const auto& r : rows) {
    uint32_t m = 0;
    for (int t : r) m |= 1u << t;
    masks.push_back(m);
  }
  auto support = [&](uint32_t s) {
    int n = 0;
    for (uint32_t m : masks) n += (m & s) == s;
    return n;
  };
  std::vector<Pattern> out;
  for (uint32_t s = 1; s < (1u << num_items); ++s) {
    const int sup = support(s);
    if (sup < min_support) continue;
    bool closed = true;
    for (int t = 0; t < num_items && closed; ++t) {
      closed = (s >> t & 1) || support(s | 1u << t) != sup;
    }
    if (!closed) continue;
    Pattern p;
    for (int t = 0; t < num_items; ++t) {
      if (s >> t & 1) p.items.push_back(t);
    }
    p.support = sup;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](const Pattern& a, const Pattern& b) { return a.items < b.items; });
  return out;
}

void MinerOracle(Acceptance& acc) {
  Rng rng(7);
  int sets = 0, mismatches = 0;
  long patterns = 0;
  for (; sets < 300; ++sets) {
    const int rows = 1 + static_cast<int>(rng.Below(30));
    const int items = 1 + static_cast<int>(rng.Below(12));
    const double density = 0.15 + 0.7 * rng.Uniform();
    std::vector<std::vector<int>> tx(rows);
    for (auto& r : tx) {
      for (int t = 0; t < items; ++t) {
        if (rng.Uniform() < density) r.push_back(t);
      }
    }
    const int min_support = 1 + static_cast<int>(rng.Below(rows));
    const auto expected = ExhaustiveClosed(tx, items, min_support);
    patterns += static_cast<long>(expected.size());
    mismatches += MineClosed(tx, items, min_support) != expected;
  }
  acc.Record("miner-oracle-equivalence", mismatches == 0,
             absl::StrFormat("%d transaction sets, %d closed itemsets, %d "
                             "mismatches",
                             sets, patterns, mismatches));
}

// ---------------------------------------------------------------------------

struct Staged {
  RunConfig config;
  Dataset dataset;
  std::vector<CandidateCluster> pool;
};

absl::StatusOr<Staged> Stage(RunConfig config) {
  Staged s;
  s.config = std::move(config);
  auto d = PrepareDataset(s.config.data);
  if (!d.ok()) return d.status();
  s.dataset = *std::move(d);
  auto pool = BuildPool(s.config, s.dataset);
  if (!pool.ok()) return pool.status();
  s.pool = *std::move(pool);
  return s;
}

struct Outcome {
  absl::Status status;
  IcsInstance instance;
  Solution solution;
  std::optional<ExplanationReport> report;
};

Outcome MineAndSolve(const Staged& staged, const MinerConfig& mine,
                     const SolverConfig& solve) {
  Outcome out;
  auto inst = MineInstance(staged.pool, staged.dataset, mine);
  if (!inst.ok()) {
    // No cluster keeps a pattern: nothing can be selected.
    if (inst.status().code() == absl::StatusCode::kFailedPrecondition) {
      out.solution.status = SolveStatus::kInfeasible;
    } else {
      out.status = inst.status();
    }
    return out;
  }
  out.instance = *std::move(inst);
  auto sol = Solve(out.instance, solve);
  if (!sol.ok()) {
    out.status = sol.status();
    return out;
  }
  out.solution = *std::move(sol);
  if (out.solution.has_solution()) {
    out.report = ReportSolution(out.solution, out.instance, staged.dataset);
  }
  return out;
}

// Explanation names per selected cluster, in cluster order.
std::vector<std::set<std::string>> ExplanationNames(const Outcome& o) {
  std::vector<std::set<std::string>> out;
  for (int c = 0; c < o.instance.num_clusters(); ++c) {
    if (!o.solution.selected[c]) continue;
    std::set<std::string> names;
    for (int p : o.solution.explanations[c]) {
      names.insert(o.instance.PatternName(p));
    }
    out.push_back(names);
  }
  return out;
}

std::string Describe(const std::vector<std::set<std::string>>& e) {
  std::vector<std::string> parts;
  for (const auto& s : e) {
    parts.push_back(absl::StrCat("{", absl::StrJoin(s, ", "), "}"));
  }
  return absl::StrJoin(parts, " / ");
}

void Keep(Acceptance& acc, const std::string& label, const Outcome& o,
          const SolverConfig& config, const Staged& staged) {
  if (!o.solution.has_solution()) return;
  acc.produced().push_back({label, o.instance, config, o.solution,
                            std::make_shared<const Dataset>(staged.dataset)});
}

void HalfmoonReproduction(Acceptance& acc, const Staged& hm) {
  struct Case {
    double theta;
    std::vector<std::set<std::string>> expected;
  };
  const Case cases[] = {
      {0.70, {{"{blue}"}, {"{red}"}}},
      {0.40, {{"{blue}", "{blue, big}"}, {"{red}", "{red, big}"}}},
  };
  for (const Case& c : cases) {
    const auto start = Clock::now();
    MinerConfig mine = hm.config.mine;
    mine.theta = Ratio::FromDouble(c.theta);
    const Outcome o = MineAndSolve(hm, mine, hm.config.solve);
    const double secs = Seconds(start);
    const std::string name =
        absl::StrFormat("halfmoon-explanations-theta%.0f-phi30", c.theta * 100);
    if (!o.status.ok()) {
      acc.Record(name, false, o.status.ToString());
      continue;
    }
    Keep(acc, name, o, hm.config.solve, hm);
    const auto got = o.solution.has_solution()
                         ? ExplanationNames(o)
                         : std::vector<std::set<std::string>>{};
    acc.Record(name, got == c.expected && secs < 10,
               absl::StrFormat("got %s, expected %s, %.2f s", Describe(got),
                               Describe(c.expected), secs));
  }
}

void HalfmoonAri(Acceptance& acc) {
  auto config = LoadRunConfig(ConfigPath("halfmoon_kmeans.ini"));
  if (!config.ok()) {
    acc.Record("halfmoon-kmeans-ari", false, config.status().ToString());
    return;
  }
  auto d = PrepareDataset(config->data);
  if (!d.ok()) {
    acc.Record("halfmoon-kmeans-ari", false, d.status().ToString());
    return;
  }
  Labels truth(d->num_instances());
  for (int i = 0; i < d->num_instances(); ++i) truth[i] = i < 100 ? 0 : 1;
  std::vector<double> aris;
  bool all_within = true;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto labels = KMeans(*d, 2, DeriveSeed(kDefaultHalfmoonSeed, {9, seed}));
    if (!labels.ok()) {
      acc.Record("halfmoon-kmeans-ari", false, labels.status().ToString());
      return;
    }
    aris.push_back(Ari(*labels, truth));
    all_within = all_within && std::abs(aris.back() - 0.26) <= 0.10;
  }
  double mean = 0;
  for (double a : aris) mean += a;
  mean /= aris.size();
  acc.Record("halfmoon-kmeans-ari", all_within && std::abs(mean - 0.26) <= 0.10,
             absl::StrFormat("per-seed ARI %s, mean %.4f, target 0.26 +/- 0.10",
                             absl::StrJoin(aris, " ", [](std::string* o, double a) {
                               absl::StrAppendFormat(o, "%.4f", a);
                             }),
                             mean));
  const double self = Ari(truth, truth);
  Labels swapped = truth;
  for (int& l : swapped) l = 1 - l;
  acc.Record("ari-identical-partition", self == 1.0 && Ari(truth, swapped) == 1.0,
             absl::StrFormat("ARI(truth, truth) = %.17g, relabeled = %.17g",
                             self, Ari(truth, swapped)));
}

// ---------------------------------------------------------------------------

struct IrisRow {
  PatternMode mode;
  int theta;  // percent
  int phi;    // percent
  bool feasible;
  double pcr, ec, ipc;
};

const IrisRow kIrisRows[] = {
    {PatternMode::kLcm, 70, 10, false, 0, 0, 0},
    {PatternMode::kLcm, 70, 30, true, 0.82, 0.91, 0.93},
    {PatternMode::kLcm, 70, 50, true, 0.83, 0.91, 0.92},
    {PatternMode::kLcm, 50, 10, false, 0, 0, 0},
    {PatternMode::kLcm, 50, 30, true, 0.69, 0.97, 0.95},
    {PatternMode::kLcm, 30, 10, true, 0.54, 0.98, 0.99},
    {PatternMode::kSingle, 70, 10, false, 0, 0, 0},
    {PatternMode::kSingle, 70, 30, true, 0.83, 0.91, 0.91},
    {PatternMode::kSingle, 70, 50, true, 0.85, 0.91, 0.88},
    {PatternMode::kSingle, 50, 10, false, 0, 0, 0},
    {PatternMode::kSingle, 50, 30, true, 0.73, 0.97, 0.91},
    {PatternMode::kSingle, 30, 10, true, 0.70, 0.79, 0.97},
};

MinerConfig IrisMine(const Staged& iris, PatternMode mode, int theta) {
  MinerConfig mine = iris.config.mine;
  mine.mode = mode;
  mine.theta = Ratio::FromParts(theta * 10000);
  return mine;
}

SolverConfig IrisSolve(const Staged& iris, int phi) {
  SolverConfig solve = iris.config.solve;
  solve.phi = Ratio::FromParts(phi * 10000);
  return solve;
}

void IrisFeasibility(Acceptance& acc, const Staged& iris) {
  for (const IrisRow& row : kIrisRows) {
    const auto start = Clock::now();
    const MinerConfig mine = IrisMine(iris, row.mode, row.theta);
    const SolverConfig solve = IrisSolve(iris, row.phi);
    const Outcome o = MineAndSolve(iris, mine, solve);
    const double secs = Seconds(start);
    const std::string name =
        absl::StrFormat("iris-%s-theta%d-phi%d", PatternModeName(row.mode),
                        row.theta, row.phi);
    if (!o.status.ok()) {
      acc.Record(name, false, o.status.ToString());
      continue;
    }
    Keep(acc, name, o, solve, iris);
    const bool feasible = o.solution.has_solution();
    bool ok = feasible == row.feasible && secs < 120;
    std::string detail =
        absl::StrFormat("%s (expected %s), %.2f s", SolveStatusName(o.solution.status),
                        row.feasible ? "feasible" : "infeasible", secs);
    if (feasible && o.report) {
      const ExplanationReport& r = *o.report;
      if (row.feasible) {
        ok = ok && std::abs(r.mean_pcr - row.pcr) <= 0.10 &&
             std::abs(r.mean_ec - row.ec) <= 0.10 &&
             std::abs(r.mean_ipc - row.ipc) <= 0.10;
      }
      absl::StrAppendFormat(&detail,
                            "; PCR/EC/IPC %.2f/%.2f/%.2f vs %.2f/%.2f/%.2f "
                            "(+/- 0.10)",
                            RoundHalfUp2(r.mean_pcr), RoundHalfUp2(r.mean_ec),
                            RoundHalfUp2(r.mean_ipc), row.pcr, row.ec, row.ipc);
    }
    acc.Record(name, ok, detail);
  }
}

// The feasibility pattern for pools drawn with other seeds; reported only.
void IrisSeedRobustness(Acceptance& acc, const RunConfig& base) {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    RunConfig config = base;
    config.seed = seed;
    auto staged = Stage(config);
    if (!staged.ok()) {
      acc.Info(absl::StrCat("iris pool seed ", seed, ": ",
                            staged.status().ToString()));
      continue;
    }
    int matches = 0;
    double worst = 0;
    std::vector<std::string> differing;
    for (const IrisRow& row : kIrisRows) {
      const Outcome o = MineAndSolve(*staged, IrisMine(*staged, row.mode, row.theta),
                                     IrisSolve(*staged, row.phi));
      const bool feasible = o.status.ok() && o.solution.has_solution();
      matches += feasible == row.feasible;
      if (feasible != row.feasible) {
        differing.push_back(absl::StrFormat("%s %d/%d", PatternModeName(row.mode),
                                            row.theta, row.phi));
      }
      if (feasible && row.feasible && o.report) {
        worst = std::max({worst, std::abs(o.report->mean_pcr - row.pcr),
                          std::abs(o.report->mean_ec - row.ec),
                          std::abs(o.report->mean_ipc - row.ipc)});
      }
    }
    acc.Info(absl::StrFormat(
        "iris pool seed %d: %d/%zu rows with the expected feasibility, largest "
        "metric gap %.2f%s",
        seed, matches, std::size(kIrisRows), worst,
        differing.empty() ? "" : " (differs: " + absl::StrJoin(differing, ", ") + ")"));
  }
}

void IrisRescue(Acceptance& acc) {
  auto config = LoadRunConfig(ConfigPath("iris_unassigned.ini"));
  if (!config.ok()) {
    acc.Record("iris-unassigned-rescue", false, config.status().ToString());
    return;
  }
  auto staged = Stage(*config);
  if (!staged.ok()) {
    acc.Record("iris-unassigned-rescue", false, staged.status().ToString());
    return;
  }
  // Without the unassigned allowance the same setting is infeasible.
  SolverConfig hard = config->solve;
  hard.nb_clust_min = 1;
  hard.max_unassigned.reset();
  const Outcome strict = MineAndSolve(*staged, config->mine, hard);
  const Outcome o = MineAndSolve(*staged, config->mine, config->solve);
  if (!o.status.ok() || !strict.status.ok()) {
    acc.Record("iris-unassigned-rescue", false,
               (!o.status.ok() ? o.status : strict.status).ToString());
    return;
  }
  Keep(acc, "iris-unassigned-rescue", o, config->solve, *staged);
  const bool ok = !strict.solution.has_solution() && o.report &&
                  o.report->mean_ipc >= 0.95 && o.report->unassigned <= 10;
  std::string detail = absl::StrFormat(
      "hard partition %s; with <= 10 unassigned %s",
      SolveStatusName(strict.solution.status), SolveStatusName(o.solution.status));
  if (o.report) {
    absl::StrAppendFormat(&detail,
                          ", %d unassigned, PCR/EC/IPC %.2f/%.2f/%.2f (IPC >= "
                          "0.95 required)",
                          o.report->unassigned, RoundHalfUp2(o.report->mean_pcr),
                          RoundHalfUp2(o.report->mean_ec),
                          RoundHalfUp2(o.report->mean_ipc));
  }
  acc.Record("iris-unassigned-rescue", ok, detail);
}

// Applies completeness at `phi` to a solution found under a tighter phi:
// every candidate no longer excused joins the explanation.
Solution CompleteAt(const IcsInstance& inst, const Solution& s, Ratio phi) {
  Solution out = s;
  for (int c = 0; c < inst.num_clusters(); ++c) {
    if (!s.selected[c]) continue;
    for (int p : inst.candidates[c]) {
      auto& e = out.explanations[c];
      if (std::find(e.begin(), e.end(), p) != e.end()) continue;
      bool excused = false;
      for (int o = 0; o < inst.num_clusters() && !excused; ++o) {
        excused = o != c && s.selected[o] &&
                  Ratio::CountAbove(inst.support[o][p], phi, inst.cluster_size(o));
      }
      if (!excused) {
        e.insert(std::upper_bound(e.begin(), e.end(), p), p);
      }
    }
  }
  return out;
}

void MonotonicitySweep(Acceptance& acc, const Staged& iris) {
  const auto start = Clock::now();
  int chains = 0, pairs = 0, exceptions = 0, feasible_counts[3] = {0, 0, 0};
  std::string first;
  const int phis[] = {50, 30, 10};
  for (PatternMode mode : {PatternMode::kLcm, PatternMode::kSingle}) {
    for (int theta : {30, 50, 70}) {
      auto inst = MineInstance(iris.pool, iris.dataset, IrisMine(iris, mode, theta));
      if (!inst.ok()) continue;
      for (int k : {2, 3, 4}) {
        for (bool hard : {true, false}) {
          for (bool complete : {true, false}) {
            ++chains;
            std::vector<Solution> sols;
            std::vector<SolverConfig> configs;
            for (int i = 0; i < 3; ++i) {
              SolverConfig solve = IrisSolve(iris, phis[i]);
              solve.k_min = solve.k_max = k;
              solve.nb_clust_min = hard ? 1 : 0;
              if (!hard) solve.max_unassigned = 15;
              solve.completeness = complete;
              auto s = Solve(*inst, solve);
              if (!s.ok()) {
                ++exceptions;
                if (first.empty()) first = s.status().ToString();
                sols.emplace_back();
              } else {
                sols.push_back(*s);
              }
              configs.push_back(solve);
              feasible_counts[i] += sols.back().has_solution();
            }
            // Tighter phi (larger index) must not be feasible unless the
            // looser ones are, and its witness must survive loosening.
            for (int tight = 1; tight < 3; ++tight) {
              for (int loose = 0; loose < tight; ++loose) {
                ++pairs;
                if (!sols[tight].has_solution()) continue;
                const Solution witness =
                    complete ? CompleteAt(*inst, sols[tight], *configs[loose].phi)
                             : sols[tight];
                SolverConfig check = configs[loose];
                Solution w = witness;
                w.objective_value =
                    EvaluateObjective(*inst, check.objective, w.selected,
                                      w.explanations);
                const bool bad = !sols[loose].has_solution() ||
                                 !CheckSolution(*inst, check, w).empty();
                if (bad) {
                  ++exceptions;
                  if (first.empty()) {
                    first = absl::StrFormat("%s theta %d k %d hard %d complete %d: "
                                            "phi %d feasible but phi %d not",
                                            PatternModeName(mode), theta, k, hard,
                                            complete, phis[tight], phis[loose]);
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  acc.Record("monotonicity-phi-sweep", exceptions == 0,
             absl::StrFormat("%d configuration chains, %d paired runs, feasible "
                             "at phi 50/30/10: %d/%d/%d, %d exceptions, %.1f s%s",
                             chains, pairs, feasible_counts[0], feasible_counts[1],
                             feasible_counts[2], exceptions, Seconds(start),
                             first.empty() ? "" : "; " + first));
}

// Every produced solution passes the checker, and every explanation pattern
// on real data re-verifies coverage and dataset-wise discrimination against
// the raw descriptor matrix.
void ConstraintAudit(Acceptance& acc) {
  int solutions = 0, violations = 0, patterns = 0, pattern_failures = 0;
  std::string first;
  for (const Produced& p : acc.produced()) {
    ++solutions;
    const auto v = CheckSolution(p.instance, p.config, p.solution);
    if (!v.empty()) {
      violations += static_cast<int>(v.size());
      if (first.empty()) first = absl::StrCat(p.label, ": ", v[0].message);
    }
    if (p.dataset == nullptr) continue;
    const Dataset& d = *p.dataset;
    const int64_t den = Ratio::kDenominator;
    for (int c = 0; c < p.instance.num_clusters(); ++c) {
      if (!p.solution.selected[c]) continue;
      const Bitset& members = p.instance.clusters[c].members;
      for (int pid : p.solution.explanations[c]) {
        ++patterns;
        int64_t in = 0, size = 0, out = 0, outside = 0;
        for (int i = 0; i < d.num_instances(); ++i) {
          bool covered = true;
          for (int t : p.instance.patterns[pid]) covered = covered && d.descriptor(i, t);
          if (members.Test(i)) {
            ++size;
            in += covered;
          } else {
            ++outside;
            out += covered;
          }
        }
        const int64_t theta = p.instance.theta.numerator();
        const bool coverage = p.instance.coverage_strict ? in * den > theta * size
                                                         : in * den >= theta * size;
        const int64_t rho = p.instance.rho.numerator();
        const bool discriminative = out * den < rho * outside;
        if (!coverage || !discriminative) {
          ++pattern_failures;
          if (first.empty()) {
            first = absl::StrFormat("%s: pattern %s of cluster %d covers %d/%d "
                                    "inside, %d/%d outside",
                                    p.label, p.instance.PatternName(pid),
                                    p.instance.clusters[c].id, in, size, out,
                                    outside);
          }
        }
      }
    }
  }
  acc.Record("constraint-audit", violations == 0 && pattern_failures == 0,
             absl::StrFormat("%d solutions, %d checker violations, %d "
                             "explanation patterns re-verified from raw data, %d "
                             "failures%s",
                             solutions, violations, patterns, pattern_failures,
                             first.empty() ? "" : "; " + first));
}

int Main() {
  Acceptance acc;
  SolverOracle(acc);
  MinerOracle(acc);

  auto hm_config = LoadRunConfig(ConfigPath("halfmoon.ini"));
  absl::StatusOr<Staged> hm =
      hm_config.ok() ? Stage(*hm_config)
                     : absl::StatusOr<Staged>(hm_config.status());
  if (hm.ok()) {
    HalfmoonReproduction(acc, *hm);
  } else {
    acc.Record("halfmoon-explanations", false, hm.status().ToString());
  }
  HalfmoonAri(acc);

  auto iris_config = LoadRunConfig(ConfigPath("iris.ini"));
  absl::StatusOr<Staged> iris =
      iris_config.ok() ? Stage(*iris_config)
                       : absl::StatusOr<Staged>(iris_config.status());
  if (iris.ok()) {
    IrisFeasibility(acc, *iris);
    IrisRescue(acc);
    MonotonicitySweep(acc, *iris);
    IrisSeedRobustness(acc, *iris_config);
  } else {
    acc.Record("iris", false, iris.status().ToString());
  }
  ConstraintAudit(acc);
  return acc.Finish();
}

}  // namespace
}  // namespace ecs

int main() { return ecs::Main(); }
