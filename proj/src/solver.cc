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

#include "ecs/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "solver_internal.h"

namespace ecs {

absl::StatusOr<Objective> ParseObjective(const std::string& name) {
  static const std::map<std::string, Objective> kNames = {
      {"max-singly-assigned", Objective::kMaxSinglyAssigned},
      {"min-unassigned", Objective::kMinUnassigned},
      {"max-clusters", Objective::kMaxClusters},
      {"max-explanation-length", Objective::kMaxExplanationLength},
      {"min-explanation-length", Objective::kMinExplanationLength},
      {"min-avg-wcss", Objective::kMinAverageWcss},
  };
  auto it = kNames.find(name);
  if (it == kNames.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown objective '", name, "'"));
  }
  return it->second;
}

std::string ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kMaxSinglyAssigned:
      return "max-singly-assigned";
    case Objective::kMinUnassigned:
      return "min-unassigned";
    case Objective::kMaxClusters:
      return "max-clusters";
    case Objective::kMaxExplanationLength:
      return "max-explanation-length";
    case Objective::kMinExplanationLength:
      return "min-explanation-length";
    case Objective::kMinAverageWcss:
      return "min-avg-wcss";
  }
  return "?";
}

bool IsMaximization(Objective objective) {
  return objective == Objective::kMaxSinglyAssigned ||
         objective == Objective::kMaxClusters ||
         objective == Objective::kMaxExplanationLength;
}

std::string SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeoutBestKnown:
      return "timeout-best-known";
    case SolveStatus::kTimeoutNoSolution:
      return "timeout-no-solution";
  }
  return "?";
}

std::string ConstraintFamilyName(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kClusterCount:
      return "cluster-count";
    case ConstraintFamily::kInstanceMembership:
      return "instance-membership";
    case ConstraintFamily::kAssignmentCount:
      return "assignment-count";
    case ConstraintFamily::kOverlap:
      return "overlap-bound";
    case ConstraintFamily::kUnassignedBound:
      return "unassigned-bound";
    case ConstraintFamily::kNonEmptyExplanation:
      return "non-empty-explanation";
    case ConstraintFamily::kClusteringWise:
      return "clustering-wise-discrimination";
    case ConstraintFamily::kClusterWise:
      return "cluster-wise-discrimination";
    case ConstraintFamily::kCompleteness:
      return "explanation-completeness";
    case ConstraintFamily::kMustSelect:
      return "must-select";
    case ConstraintFamily::kCannotSelect:
      return "cannot-select";
    case ConstraintFamily::kMalformed:
      return "malformed-solution";
  }
  return "?";
}

std::optional<ConstraintFamily> SearchStats::TightestFamily() const {
  int best = -1;
  for (int f = 0; f < kNumConstraintFamilies; ++f) {
    if (failures[f] > 0 && (best < 0 || failures[f] > failures[best])) best = f;
  }
  if (best < 0) return std::nullopt;
  return static_cast<ConstraintFamily>(best);
}

int Solution::num_selected() const {
  return static_cast<int>(std::count(selected.begin(), selected.end(), true));
}

absl::Status ValidateSolverConfig(const SolverConfig& config) {
  if (config.k_min < 0 || config.k_min > config.k_max) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "solver: need 0 <= k_min <= k_max, got [%d, %d]", config.k_min,
        config.k_max));
  }
  if (config.nb_clust_min < 0 || config.nb_clust_min > config.nb_clust_max) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "solver: need 0 <= nb_clust_min <= nb_clust_max, got [%d, %d]",
        config.nb_clust_min, config.nb_clust_max));
  }
  if (config.nb_diff1_max && *config.nb_diff1_max < 0) {
    return absl::InvalidArgumentError("solver: nb_diff1_max must be >= 0");
  }
  if (config.max_unassigned && *config.max_unassigned < 0) {
    return absl::InvalidArgumentError("solver: max_unassigned must be >= 0");
  }
  if (config.eta && !config.eta->InUnitInterval()) {
    return absl::InvalidArgumentError("solver: eta must be in [0, 1]");
  }
  if (config.phi && !config.phi->InUnitInterval()) {
    return absl::InvalidArgumentError("solver: phi must be in [0, 1]");
  }
  if (config.completeness &&
      config.objective == Objective::kMinExplanationLength) {
    return absl::InvalidArgumentError(
        "solver: explanation completeness cannot be combined with the "
        "min-explanation-length objective");
  }
  if (config.time_limit_seconds && *config.time_limit_seconds < 0) {
    return absl::InvalidArgumentError("solver: time_limit must be >= 0");
  }
  return absl::OkStatus();
}

namespace internal {

absl::StatusOr<ResolvedConfig> Resolve(const IcsInstance& instance,
                                       const SolverConfig& config) {
  if (absl::Status s = ValidateInstance(instance); !s.ok()) return s;
  if (absl::Status s = ValidateSolverConfig(config); !s.ok()) return s;
  const int v = instance.num_clusters();
  std::map<int, int> index_of;
  for (int c = 0; c < v; ++c) index_of[instance.clusters[c].id] = c;
  auto lookup = [&](int id) -> absl::StatusOr<int> {
    auto it = index_of.find(id);
    if (it == index_of.end()) {
      return absl::NotFoundError(absl::StrCat(
          "solver: cluster id ", id,
          " is not in the instance (filtered out or dropped during mining)"));
    }
    return it->second;
  };
  ResolvedConfig r;
  r.k_min = config.k_min;
  r.k_max = std::min(config.k_max, v);
  r.must.assign(v, false);
  r.cannot.assign(v, {});
  for (int id : config.must_select) {
    absl::StatusOr<int> c = lookup(id);
    if (!c.ok()) return c.status();
    r.must[*c] = true;
  }
  for (auto [a, b] : config.cannot_select) {
    absl::StatusOr<int> ca = lookup(a);
    if (!ca.ok()) return ca.status();
    absl::StatusOr<int> cb = lookup(b);
    if (!cb.ok()) return cb.status();
    if (*ca == *cb) {
      return absl::InvalidArgumentError(
          absl::StrCat("solver: cannot-select pair repeats cluster ", a));
    }
    r.cannot[*ca].push_back(*cb);
    r.cannot[*cb].push_back(*ca);
  }
  return r;
}

std::vector<int> AssignmentCounts(const IcsInstance& instance,
                                  const std::vector<bool>& selected) {
  std::vector<int> counts(instance.num_instances, 0);
  for (int c = 0; c < instance.num_clusters(); ++c) {
    if (!selected[c]) continue;
    for (int i : instance.clusters[c].members.ToIndices()) ++counts[i];
  }
  return counts;
}

}  // namespace internal

double EvaluateObjective(const IcsInstance& instance, Objective objective,
                         const std::vector<bool>& selected,
                         const std::vector<std::vector<int>>& explanations) {
  const std::vector<int> counts =
      internal::AssignmentCounts(instance, selected);
  int k = 0;
  int64_t length = 0;
  double wcss = 0;
  for (int c = 0; c < instance.num_clusters(); ++c) {
    if (!selected[c]) continue;
    ++k;
    length += static_cast<int64_t>(explanations[c].size());
    wcss += instance.clusters[c].wcss;
  }
  switch (objective) {
    case Objective::kMaxSinglyAssigned:
      return static_cast<double>(std::count(counts.begin(), counts.end(), 1));
    case Objective::kMinUnassigned:
      return static_cast<double>(std::count(counts.begin(), counts.end(), 0));
    case Objective::kMaxClusters:
      return k;
    case Objective::kMaxExplanationLength:
    case Objective::kMinExplanationLength:
      return static_cast<double>(length);
    case Objective::kMinAverageWcss:
      return k == 0 ? std::numeric_limits<double>::infinity() : wcss / k;
  }
  return 0;
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool LexLess(const std::vector<bool>& a, const std::vector<bool>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Depth-first branch and bound over the cluster selection vector. Clusters
// are branched in index order, value 0 before 1, so the first optimum found
// is the lexicographically smallest one.
class BranchAndBound {
 public:
  struct Result {
    bool found = false;
    bool timed_out = false;
    std::vector<bool> selected;
    std::vector<std::vector<int>> explanations;
  };

  // Under kMinAverageWcss the search runs with k_min == k_max and minimizes
  // the WCSS sum.
  BranchAndBound(const IcsInstance& instance, const SolverConfig& config,
                 const internal::ResolvedConfig& resolved, int k_min,
                 int k_max, std::optional<Clock::time_point> deadline,
                 SearchStats* stats)
      : inst_(instance),
        config_(config),
        resolved_(resolved),
        objective_(config.objective),
        k_min_(k_min),
        k_max_(k_max),
        deadline_(deadline),
        stats_(stats),
        v_(instance.num_clusters()),
        n_(instance.num_instances) {
    BuildStaticData();
  }

  Result Run() {
    Reset();
    if (RootPropagate()) Dfs();
    Result r;
    r.timed_out = timed_out_;
    if (best_cost_ < kInf) {
      r.found = true;
      r.selected = best_selected_;
      r.explanations = best_explanations_;
    }
    return r;
  }

 private:
  struct Pending {
    int cluster;
    int8_t value;
    ConstraintFamily reason;
  };

  void BuildStaticData() {
    members_.resize(v_);
    clusters_of_.assign(n_, {});
    for (int c = 0; c < v_; ++c) {
      members_[c] = inst_.clusters[c].members.ToIndices();
      for (int i : members_[c]) clusters_of_[i].push_back(c);
    }
    slot_begin_.resize(v_ + 1);
    int s = 0;
    for (int c = 0; c < v_; ++c) {
      slot_begin_[c] = s;
      for (int p : inst_.candidates[c]) {
        slot_pattern_.push_back(p);
        slot_owner_.push_back(c);
        ++s;
      }
    }
    slot_begin_[v_] = s;
    victims_.assign(v_, {});
    if (config_.phi) {
      for (int slot = 0; slot < s; ++slot) {
        const int owner = slot_owner_[slot];
        const int p = slot_pattern_[slot];
        for (int other = 0; other < v_; ++other) {
          if (other != owner &&
              internal::CoversAbovePhi(inst_, *config_.phi, other, p)) {
            victims_[other].push_back(slot);
          }
        }
      }
    }
    if (config_.eta) {
      coverers_.assign(inst_.num_patterns(), {});
      for (int p = 0; p < inst_.num_patterns(); ++p) {
        for (int c = 0; c < v_; ++c) {
          if (internal::CoversAtTheta(inst_, c, p)) coverers_[p].push_back(c);
        }
      }
    }
    by_wcss_.resize(v_);
    for (int c = 0; c < v_; ++c) by_wcss_[c] = c;
    std::stable_sort(by_wcss_.begin(), by_wcss_.end(), [&](int a, int b) {
      return inst_.clusters[a].wcss < inst_.clusters[b].wcss;
    });
  }

  void Reset() {
    value_.assign(v_, -1);
    sel_count_.assign(n_, 0);
    open_count_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      open_count_[i] = static_cast<int>(clusters_of_[i].size());
    }
    kill_.assign(slot_pattern_.size(), 0);
    alive_.resize(v_);
    for (int c = 0; c < v_; ++c) alive_[c] = slot_begin_[c + 1] - slot_begin_[c];
    n_sel_ = 0;
    n_undec_ = v_;
    n_over_ = 0;
    n_dead_ = 0;
    for (int i = 0; i < n_; ++i) n_dead_ += open_count_[i] == 0;
    trail_.clear();
    pending_.clear();
    best_cost_ = kInf;
    timed_out_ = false;
  }

  void Fail(ConstraintFamily family) {
    ++stats_->failures[static_cast<int>(family)];
  }

  bool RootPropagate() {
    for (int i = 0; i < n_; ++i) {
      if (open_count_[i] < config_.nb_clust_min) {
        Fail(ConstraintFamily::kInstanceMembership);
        return false;
      }
      if (open_count_[i] == config_.nb_clust_min) {
        for (int c : clusters_of_[i]) {
          pending_.push_back({c, 1, ConstraintFamily::kInstanceMembership});
        }
      }
      if (config_.nb_clust_max == 0) {
        for (int c : clusters_of_[i]) {
          pending_.push_back({c, 0, ConstraintFamily::kInstanceMembership});
        }
      }
    }
    if (config_.max_unassigned && n_dead_ > *config_.max_unassigned) {
      Fail(ConstraintFamily::kUnassignedBound);
      return false;
    }
    if (k_min_ > v_) {
      Fail(ConstraintFamily::kClusterCount);
      return false;
    }
    for (int c = 0; c < v_; ++c) {
      if (resolved_.must[c]) {
        pending_.push_back({c, 1, ConstraintFamily::kMustSelect});
      }
    }
    return Propagate();
  }

  // Applies every effect of fixing `c` to `v`, queueing implied assignments.
  // Returns false if a constraint is violated; the state stays consistent
  // for Undo either way.
  bool Apply(int c, int8_t v) {
    value_[c] = v;
    trail_.push_back(c);
    --n_undec_;
    bool ok = true;
    if (v == 1) {
      ++n_sel_;
      if (n_sel_ > k_max_) {
        Fail(ConstraintFamily::kClusterCount);
        ok = false;
      }
      for (int i : members_[c]) {
        --open_count_[i];
        const int sel = ++sel_count_[i];
        if (sel == 2) ++n_over_;
        if (sel > config_.nb_clust_max) {
          if (ok) Fail(ConstraintFamily::kInstanceMembership);
          ok = false;
        } else if (sel == config_.nb_clust_max) {
          for (int other : clusters_of_[i]) {
            if (value_[other] == -1) {
              pending_.push_back(
                  {other, 0, ConstraintFamily::kInstanceMembership});
            }
          }
        }
      }
      if (config_.nb_diff1_max && n_over_ > *config_.nb_diff1_max) {
        if (ok) Fail(ConstraintFamily::kOverlap);
        ok = false;
      }
      for (int other : resolved_.cannot[c]) {
        pending_.push_back({other, 0, ConstraintFamily::kCannotSelect});
      }
      for (int slot : victims_[c]) {
        if (++kill_[slot] != 1) continue;
        const int owner = slot_owner_[slot];
        if (--alive_[owner] == 0) {
          if (value_[owner] == 1) {
            if (ok) Fail(ConstraintFamily::kClusterWise);
            ok = false;
          } else if (value_[owner] == -1) {
            pending_.push_back({owner, 0, ConstraintFamily::kClusterWise});
          }
        }
      }
      if (alive_[c] == 0) {
        if (ok) Fail(ConstraintFamily::kClusterWise);
        ok = false;
      }
    } else {
      if (resolved_.must[c]) {
        Fail(ConstraintFamily::kMustSelect);
        ok = false;
      }
      if (n_sel_ + n_undec_ < k_min_) {
        if (ok) Fail(ConstraintFamily::kClusterCount);
        ok = false;
      }
      for (int i : members_[c]) {
        const int open = --open_count_[i];
        const int reach = sel_count_[i] + open;
        if (reach == 0) ++n_dead_;
        if (reach < config_.nb_clust_min) {
          if (ok) Fail(ConstraintFamily::kInstanceMembership);
          ok = false;
        } else if (reach == config_.nb_clust_min && open > 0) {
          for (int other : clusters_of_[i]) {
            if (value_[other] == -1) {
              pending_.push_back(
                  {other, 1, ConstraintFamily::kInstanceMembership});
            }
          }
        }
      }
      if (config_.max_unassigned && n_dead_ > *config_.max_unassigned) {
        if (ok) Fail(ConstraintFamily::kUnassignedBound);
        ok = false;
      }
    }
    return ok;
  }

  void UndoOne() {
    const int c = trail_.back();
    trail_.pop_back();
    const int8_t v = value_[c];
    if (v == 1) {
      for (int slot : victims_[c]) {
        if (--kill_[slot] == 0) ++alive_[slot_owner_[slot]];
      }
      for (int i : members_[c]) {
        if (sel_count_[i]-- == 2) --n_over_;
        ++open_count_[i];
      }
      --n_sel_;
    } else {
      for (int i : members_[c]) {
        if (sel_count_[i] + open_count_[i] == 0) --n_dead_;
        ++open_count_[i];
      }
    }
    ++n_undec_;
    value_[c] = -1;
  }

  void UndoTo(size_t mark) {
    while (trail_.size() > mark) UndoOne();
  }

  bool Propagate() {
    size_t head = 0;
    bool ok = true;
    while (ok) {
      while (ok && head < pending_.size()) {
        const Pending p = pending_[head++];
        if (value_[p.cluster] == p.value) continue;
        if (value_[p.cluster] != -1) {
          Fail(p.reason);
          ok = false;
          break;
        }
        ok = Apply(p.cluster, p.value);
      }
      if (!ok || n_undec_ == 0) break;
      if (n_sel_ == k_max_) {
        for (int c = 0; c < v_; ++c) {
          if (value_[c] == -1) {
            pending_.push_back({c, 0, ConstraintFamily::kClusterCount});
          }
        }
      } else if (n_sel_ + n_undec_ == k_min_) {
        for (int c = 0; c < v_; ++c) {
          if (value_[c] == -1) {
            pending_.push_back({c, 1, ConstraintFamily::kClusterCount});
          }
        }
      } else {
        break;
      }
    }
    pending_.clear();
    return ok;
  }

  // Lower bound on the cost (maximized objectives are negated) of any
  // completion of the current partial selection.
  double Bound() const {
    switch (objective_) {
      case Objective::kMaxSinglyAssigned: {
        int ub = 0;
        for (int i = 0; i < n_; ++i) {
          ub += sel_count_[i] == 1 || (sel_count_[i] == 0 && open_count_[i] > 0);
        }
        return -ub;
      }
      case Objective::kMinUnassigned:
        return n_dead_;
      case Objective::kMaxClusters:
        return -std::min(k_max_, n_sel_ + n_undec_);
      case Objective::kMaxExplanationLength: {
        int64_t ub = 0;
        std::vector<int> open_alive;
        for (int c = 0; c < v_; ++c) {
          if (value_[c] == 1) ub += alive_[c];
          if (value_[c] == -1) open_alive.push_back(alive_[c]);
        }
        const size_t slots =
            static_cast<size_t>(std::max(0, k_max_ - n_sel_));
        if (open_alive.size() > slots) {
          std::nth_element(open_alive.begin(), open_alive.begin() + slots,
                           open_alive.end(), std::greater<int>());
          open_alive.resize(slots);
        }
        for (int a : open_alive) ub += a;
        return -static_cast<double>(ub);
      }
      case Objective::kMinExplanationLength:
        return std::max(n_sel_, k_min_);
      case Objective::kMinAverageWcss: {
        double sum = 0;
        for (int c = 0; c < v_; ++c) {
          if (value_[c] == 1) sum += inst_.clusters[c].wcss;
        }
        int need = k_min_ - n_sel_;
        for (int c : by_wcss_) {
          if (need <= 0) break;
          if (value_[c] == -1) {
            sum += inst_.clusters[c].wcss;
            --need;
          }
        }
        return sum;
      }
    }
    return 0;
  }

  bool OutOfTime() {
    if (!deadline_) return false;
    if ((stats_->nodes & 1023) == 0 && Clock::now() >= *deadline_) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  void Leaf() {
    const int k = n_sel_;
    if (objective_ == Objective::kMinAverageWcss && k == 0) return;
    std::vector<std::vector<int>> expl(v_);
    for (int c = 0; c < v_; ++c) {
      if (value_[c] != 1) continue;
      for (int slot = slot_begin_[c]; slot < slot_begin_[c + 1]; ++slot) {
        if (kill_[slot] != 0) continue;
        const int p = slot_pattern_[slot];
        bool eta_ok = true;
        if (config_.eta) {
          int covered = 0;
          for (int other : coverers_[p]) covered += value_[other] == 1;
          eta_ok = internal::WithinEta(config_, covered, k);
        }
        if (!eta_ok) {
          if (config_.completeness) {
            Fail(ConstraintFamily::kCompleteness);
            return;
          }
          continue;
        }
        expl[c].push_back(p);
        if (objective_ == Objective::kMinExplanationLength) break;
      }
      if (expl[c].empty()) {
        Fail(config_.eta ? ConstraintFamily::kClusteringWise
                         : ConstraintFamily::kNonEmptyExplanation);
        return;
      }
    }
    std::vector<bool> selected(v_);
    for (int c = 0; c < v_; ++c) selected[c] = value_[c] == 1;
    double cost;
    if (objective_ == Objective::kMinAverageWcss) {
      cost = 0;
      for (int c = 0; c < v_; ++c) {
        if (selected[c]) cost += inst_.clusters[c].wcss;
      }
    } else {
      cost = EvaluateObjective(inst_, objective_, selected, expl);
      if (IsMaximization(objective_)) cost = -cost;
    }
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_selected_ = std::move(selected);
      best_explanations_ = std::move(expl);
    }
  }

  void Dfs() {
    ++stats_->nodes;
    if (OutOfTime()) return;
    if (best_cost_ < kInf && Bound() >= best_cost_) {
      ++stats_->bound_prunes;
      return;
    }
    int branch = -1;
    for (int c = 0; c < v_; ++c) {
      if (value_[c] == -1) {
        branch = c;
        break;
      }
    }
    if (branch < 0) {
      Leaf();
      return;
    }
    for (int8_t v : {int8_t{0}, int8_t{1}}) {
      const size_t mark = trail_.size();
      pending_.push_back({branch, v, ConstraintFamily::kClusterCount});
      if (Propagate()) Dfs();
      UndoTo(mark);
      if (timed_out_) return;
    }
  }

  const IcsInstance& inst_;
  const SolverConfig& config_;
  const internal::ResolvedConfig& resolved_;
  const Objective objective_;
  const int k_min_;
  const int k_max_;
  const std::optional<Clock::time_point> deadline_;
  SearchStats* stats_;
  const int v_;
  const int n_;

  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> clusters_of_;
  std::vector<int> slot_begin_;
  std::vector<int> slot_pattern_;
  std::vector<int> slot_owner_;
  std::vector<std::vector<int>> victims_;   // cluster -> slots it disables
  std::vector<std::vector<int>> coverers_;  // pattern -> clusters at theta
  std::vector<int> by_wcss_;

  std::vector<int8_t> value_;
  std::vector<int> sel_count_;
  std::vector<int> open_count_;
  std::vector<int> kill_;
  std::vector<int> alive_;
  int n_sel_ = 0;
  int n_undec_ = 0;
  int n_over_ = 0;
  int n_dead_ = 0;
  std::vector<int> trail_;
  std::vector<Pending> pending_;

  double best_cost_ = kInf;
  std::vector<bool> best_selected_;
  std::vector<std::vector<int>> best_explanations_;
  bool timed_out_ = false;
};

Solution Finish(const IcsInstance& instance, const SolverConfig& config,
                BranchAndBound::Result result, bool timed_out,
                SearchStats stats) {
  Solution s;
  s.stats = stats;
  if (!result.found) {
    s.status = timed_out ? SolveStatus::kTimeoutNoSolution
                         : SolveStatus::kInfeasible;
    s.selected.assign(instance.num_clusters(), false);
    s.explanations.assign(instance.num_clusters(), {});
    s.assignment_counts.assign(instance.num_instances, 0);
    return s;
  }
  s.status = timed_out ? SolveStatus::kTimeoutBestKnown : SolveStatus::kOptimal;
  s.selected = std::move(result.selected);
  s.explanations = std::move(result.explanations);
  s.assignment_counts = internal::AssignmentCounts(instance, s.selected);
  s.objective_value =
      EvaluateObjective(instance, config.objective, s.selected, s.explanations);
  return s;
}

}  // namespace

absl::StatusOr<Solution> Solve(const IcsInstance& instance,
                               const SolverConfig& config) {
  absl::StatusOr<internal::ResolvedConfig> resolved =
      internal::Resolve(instance, config);
  if (!resolved.ok()) return resolved.status();
  const Clock::time_point start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (config.time_limit_seconds) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(
                               *config.time_limit_seconds));
  }
  SearchStats stats;
  BranchAndBound::Result best;
  bool timed_out = false;
  if (config.objective == Objective::kMinAverageWcss) {
    // The ratio objective is handled by one fixed-size search per k.
    double best_ratio = kInf;
    for (int k = std::max(1, resolved->k_min); k <= resolved->k_max; ++k) {
      BranchAndBound search(instance, config, *resolved, k, k, deadline,
                            &stats);
      BranchAndBound::Result r = search.Run();
      timed_out |= r.timed_out;
      if (r.found) {
        const double ratio = EvaluateObjective(
            instance, config.objective, r.selected, r.explanations);
        if (ratio < best_ratio ||
            (ratio == best_ratio && LexLess(r.selected, best.selected))) {
          best_ratio = ratio;
          best = std::move(r);
        }
      }
      if (timed_out) break;
    }
  } else {
    BranchAndBound search(instance, config, *resolved, resolved->k_min,
                          resolved->k_max, deadline, &stats);
    best = search.Run();
    timed_out = best.timed_out;
  }
  stats.seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return Finish(instance, config, std::move(best), timed_out, stats);
}

}  // namespace ecs
