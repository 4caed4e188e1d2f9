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

#include "ecs/filter.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace ecs {

absl::Status ValidateFilterConfig(const FilterConfig& config,
                                  int num_instances) {
  if (config.size_min && config.size_max &&
      *config.size_min > *config.size_max) {
    return absl::InvalidArgumentError(
        absl::StrFormat("filter: size_min %d > size_max %d", *config.size_min,
                        *config.size_max));
  }
  if (config.diameter_max && *config.diameter_max < 0) {
    return absl::InvalidArgumentError("filter: diameter_max must be >= 0");
  }
  if (config.top_iota && (*config.top_iota <= 0 || *config.top_iota > 100)) {
    return absl::InvalidArgumentError(
        absl::StrCat("filter: iota must be in (0, 100], got ", *config.top_iota));
  }
  for (const auto* pairs : {&config.must_link, &config.cannot_link}) {
    for (auto [a, b] : *pairs) {
      if (a < 0 || b < 0 || a >= num_instances || b >= num_instances) {
        return absl::OutOfRangeError(absl::StrFormat(
            "filter: link pair (%d, %d) out of range", a, b));
      }
    }
  }
  return absl::OkStatus();
}

std::vector<CandidateCluster> FilterIndividual(
    const std::vector<CandidateCluster>& pool, const FilterConfig& config,
    std::vector<Removal>* removals) {
  std::vector<CandidateCluster> out;
  for (const CandidateCluster& c : pool) {
    std::string reason;
    const int size = c.size();
    if (config.size_min && size < *config.size_min) {
      reason = absl::StrFormat("size %d < size_min %d", size, *config.size_min);
    } else if (config.size_max && size > *config.size_max) {
      reason = absl::StrFormat("size %d > size_max %d", size, *config.size_max);
    } else if (config.diameter_max && c.diameter > *config.diameter_max) {
      reason = absl::StrFormat("diameter %g > diameter_max %g", c.diameter,
                               *config.diameter_max);
    }
    for (auto [a, b] : config.must_link) {
      if (!reason.empty()) break;
      if (c.members.Test(a) != c.members.Test(b)) {
        reason = absl::StrFormat("separates must-link (%d, %d)", a, b);
      }
    }
    for (auto [a, b] : config.cannot_link) {
      if (!reason.empty()) break;
      if (c.members.Test(a) && c.members.Test(b)) {
        reason = absl::StrFormat("joins cannot-link (%d, %d)", a, b);
      }
    }
    if (reason.empty()) {
      out.push_back(c);
    } else if (removals != nullptr) {
      removals->push_back({c.id, reason});
    }
  }
  return out;
}

std::vector<CandidateCluster> FilterTop(
    const std::vector<CandidateCluster>& pool, const FilterConfig& config) {
  if (!config.top_iota || *config.top_iota >= 100) return pool;
  // The epsilon absorbs products such as 3.0000000000000004 before ceil.
  const double exact = *config.top_iota * static_cast<double>(pool.size()) / 100.0;
  size_t keep = static_cast<size_t>(std::ceil(exact - 1e-9));
  keep = std::min(keep, pool.size());
  std::vector<size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  auto metric = [&](size_t i) {
    return config.top_metric == TopMetric::kWcss ? pool[i].wcss
                                                 : pool[i].diameter;
  };
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (metric(a) != metric(b)) return metric(a) < metric(b);
    return pool[a].id < pool[b].id;
  });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  std::vector<CandidateCluster> out;
  for (size_t i : order) out.push_back(pool[i]);
  return out;
}

absl::StatusOr<std::vector<CandidateCluster>> ApplyFilters(
    const std::vector<CandidateCluster>& pool, const FilterConfig& config,
    std::vector<Removal>* removals) {
  std::vector<CandidateCluster> out =
      FilterTop(FilterIndividual(pool, config, removals), config);
  if (out.empty()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "filtering removed all %d candidate clusters; loosen the size, "
        "diameter or iota bounds, or revise the ML/CL constraints",
        pool.size()));
  }
  return out;
}

absl::Status ParseLinkConstraints(const std::string& text,
                                  const std::string& source,
                                  const Dataset& dataset,
                                  FilterConfig* config) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    absl::string_view body = absl::StripAsciiWhitespace(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string> tok =
        absl::StrSplit(body, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (tok.size() != 3 || (tok[0] != "ML" && tok[0] != "CL")) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s:%d: expected 'ML a b' or 'CL a b'", source, lineno));
    }
    const int a = dataset.FindInstance(tok[1]);
    const int b = dataset.FindInstance(tok[2]);
    if (a < 0 || b < 0) {
      return absl::NotFoundError(absl::StrFormat(
          "%s:%d: unknown instance id '%s'", source, lineno,
          a < 0 ? tok[1] : tok[2]));
    }
    (tok[0] == "ML" ? config->must_link : config->cannot_link)
        .emplace_back(a, b);
  }
  return absl::OkStatus();
}

absl::Status LoadLinkConstraints(const std::string& path,
                                 const Dataset& dataset, FilterConfig* config) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat(path, ": cannot open file"));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseLinkConstraints(buf.str(), path, dataset, config);
}

}  // namespace ecs
